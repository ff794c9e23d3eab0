// io.hpp — CSV/JSON artifact writers and readers
//
// Every CSV starts with a declared header of the form
//   # otoc-lab v1 kind=<kind> key=value ...
// followed by a column-name row and numeric rows. Floats are written with
// 17 significant digits so downstream refits lose nothing.

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "otoclab/criticality.hpp"
#include "otoclab/otoc.hpp"

namespace otoc {

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

std::string format_double(double v); // %.17g

void write_series_csv(const std::filesystem::path& path, const OTOCSeries& series);
void write_spectrum_csv(const std::filesystem::path& path, const EigenDecomposition& d);
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep,
                     const ModelParams& params_template);
void write_phase_diagram_csv(const std::filesystem::path& path, const PhaseDiagramGrid& grid,
                             const ModelParams& params_template);
void write_critical_line_csv(const std::filesystem::path& path, const PhaseDiagramGrid& grid,
                             const ModelParams& params_template);
void write_esqpt_csv(const std::filesystem::path& path, const EsqptScan& scan,
                     const ModelParams& p, OpTag tag);
void write_prmax_csv(const std::filesystem::path& path, const std::vector<PrMaxPoint>& points,
                     const ModelParams& params_template);

// {"exponent", "stderr", "window", "points", ...} per scaling fit.
void write_scaling_json(const std::filesystem::path& path, const std::string& exponent_name,
                        double exponent, const ScalingFit& fit,
                        const std::vector<double>& values);

// Parsed CSV produced by this tool. Throws io_error when the declared
// header is missing or malformed.
struct CsvTable {
    std::string kind;
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const; // -1 if absent
};

CsvTable read_csv(const std::filesystem::path& path);

std::string file_checksum_hex(const std::filesystem::path& path);

} // namespace otoc
