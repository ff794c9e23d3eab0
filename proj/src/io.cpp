#include "otoclab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace otoc {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw io_error("cannot open for writing: " + path.string());
    return os;
}

void header(std::ofstream& os, const std::string& kind, const std::string& extra) {
    os << "# otoc-lab v1 kind=" << kind;
    if (!extra.empty()) os << ' ' << extra;
    os << '\n';
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) throw io_error("write failed: " + path.string());
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_series_csv(const std::filesystem::path& path, const OTOCSeries& series) {
    auto os = open_out(path);
    header(os, "series",
           describe(series.params) + " operator=" + series.operator_tag +
               " state=" + series.state_tag);
    os << "t,re_F,im_F\n";
    for (std::size_t k = 0; k < series.times.size(); ++k)
        os << format_double(series.times[k]) << ',' << format_double(series.values[k].real())
           << ',' << format_double(series.values[k].imag()) << '\n';
    finish(os, path);
}

void write_spectrum_csv(const std::filesystem::path& path, const EigenDecomposition& d) {
    auto os = open_out(path);
    header(os, "spectrum", describe(d.params));
    os << "level,energy,parity\n";
    for (Eigen::Index k = 0; k < d.dim(); ++k)
        os << k << ',' << format_double(d.energies(k)) << ',' << d.parities(k) << '\n';
    finish(os, path);
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep,
                     const ModelParams& params_template) {
    auto os = open_out(path);
    header(os, "sweep", describe(params_template) + " axis=" + sweep.axis_name);
    os << sweep.axis_name << ",f_bar,f_bar_im,pr,variance,u,ok\n";
    for (const SweepPoint& pt : sweep.points) {
        os << format_double(pt.axis) << ',' << format_double(pt.f_bar) << ','
           << format_double(pt.f_bar_complex.imag()) << ',' << format_double(pt.pr) << ','
           << format_double(pt.variance.value_or(std::nan(""))) << ','
           << format_double(pt.params.u) << ',' << (pt.ok ? 1 : 0) << '\n';
    }
    finish(os, path);
}

void write_phase_diagram_csv(const std::filesystem::path& path, const PhaseDiagramGrid& grid,
                             const ModelParams& params_template) {
    auto os = open_out(path);
    header(os, "phase_diagram", describe(params_template));
    os << "capital_lambda,w,c_half\n";
    for (std::size_t iw = 0; iw < grid.ws.size(); ++iw)
        for (std::size_t il = 0; il < grid.capital_lambdas.size(); ++il)
            os << format_double(grid.capital_lambdas[il]) << ',' << format_double(grid.ws[iw])
               << ','
               << format_double(grid.c_half(static_cast<Eigen::Index>(il),
                                            static_cast<Eigen::Index>(iw)))
               << '\n';
    finish(os, path);
}

void write_critical_line_csv(const std::filesystem::path& path, const PhaseDiagramGrid& grid,
                             const ModelParams& params_template) {
    auto os = open_out(path);
    header(os, "critical_line", describe(params_template));
    os << "w,capital_lambda_c\n";
    for (std::size_t iw = 0; iw < grid.ws.size(); ++iw)
        os << format_double(grid.ws[iw]) << ',' << format_double(grid.critical_line[iw])
           << '\n';
    finish(os, path);
}

void write_esqpt_csv(const std::filesystem::path& path, const EsqptScan& scan,
                     const ModelParams& p, OpTag tag) {
    auto os = open_out(path);
    std::ostringstream extra;
    extra << describe(p) << " operator=" << to_string(tag)
          << " e_c_lower=" << format_double(scan.e_c_lower)
          << " e_c_upper=" << format_double(scan.e_c_upper);
    if (scan.split_lower) extra << " split_lower=" << format_double(*scan.split_lower);
    if (scan.split_upper) extra << " split_upper=" << format_double(*scan.split_upper);
    header(os, "esqpt", extra.str());
    os << "level,energy,parity,f_bar\n";
    for (std::size_t k = 0; k < scan.levels.size(); ++k)
        os << k << ',' << format_double(scan.levels[k].energy) << ',' << scan.levels[k].parity
           << ',' << format_double(scan.levels[k].f_bar) << '\n';
    finish(os, path);
}

void write_prmax_csv(const std::filesystem::path& path, const std::vector<PrMaxPoint>& points,
                     const ModelParams& params_template) {
    auto os = open_out(path);
    header(os, "prmax", describe(params_template));
    os << "w,lambda_at_max,pr_max,variance\n";
    for (const PrMaxPoint& pt : points)
        os << format_double(pt.w) << ',' << format_double(pt.lambda_at_max) << ','
           << format_double(pt.pr_max) << ',' << format_double(pt.variance) << '\n';
    finish(os, path);
}

void write_scaling_json(const std::filesystem::path& path, const std::string& exponent_name,
                        double exponent, const ScalingFit& fit,
                        const std::vector<double>& values) {
    nlohmann::json j;
    j["exponent_name"] = exponent_name;
    j["exponent"] = exponent;
    j["stderr"] = fit.slope_stderr;
    j["window"] = fit.fit_window;
    j["points"] = {{"n", fit.fit_window}, {"value", values}};
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["residuals"] = fit.residuals;
    auto os = open_out(path);
    os << j.dump(2) << '\n';
    finish(os, path);
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open: " + path.string());

    std::string line;
    if (!std::getline(is, line)) throw io_error("empty file: " + path.string());
    const std::string prefix = "# otoc-lab v1 ";
    if (line.rfind(prefix, 0) != 0)
        throw io_error("missing declared header in " + path.string());

    CsvTable table;
    std::istringstream head(line.substr(prefix.size()));
    std::string token;
    while (head >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        table.meta[token.substr(0, eq)] = token.substr(eq + 1);
    }
    if (!table.meta.count("kind"))
        throw io_error("declared header lacks kind= in " + path.string());
    table.kind = table.meta["kind"];

    if (!std::getline(is, line)) throw io_error("missing column row in " + path.string());
    std::istringstream cols(line);
    std::string col;
    while (std::getline(cols, col, ',')) table.columns.push_back(col);
    if (table.columns.empty()) throw io_error("no columns in " + path.string());

    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw io_error("non-numeric cell '" + cell + "' in " + path.string());
            }
        }
        if (row.size() != table.columns.size())
            throw io_error("ragged row in " + path.string());
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string file_checksum_hex(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open for checksum: " + path.string());
    std::uint64_t h = 1469598103934665603ULL;
    char buf[1 << 16];
    while (is.read(buf, sizeof buf) || is.gcount() > 0) {
        const std::streamsize got = is.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (!is) break;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace otoc
