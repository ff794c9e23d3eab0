#include "otoclab/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace otoc {

namespace {

constexpr char kMagic[8] = {'O', 'T', 'O', 'C', 'E', 'I', 'G', 'D'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool get(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return bool(is);
}

EigenDecomposition compute(const ModelParams& p, HamiltonianKind kind) {
    switch (kind) {
        case HamiltonianKind::composite: return diagonalize_model(p);
        case HamiltonianKind::boson: return diagonalize_boson(p);
        case HamiltonianKind::plus: return diagonalize_model_pm(p, +1);
        case HamiltonianKind::minus: return diagonalize_model_pm(p, -1);
    }
    throw std::invalid_argument("diagonalize_cached: unknown kind");
}

} // namespace

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string cache_key(const ModelParams& p, HamiltonianKind kind) {
    struct {
        std::uint32_t version, kind;
        std::int32_t n;
        double u, j, j_a, w;
    } packed{kVersion, static_cast<std::uint32_t>(kind), p.n, p.u, p.j, p.j_a, p.w};
    char buf[sizeof(packed)];
    std::memcpy(buf, &packed, sizeof(packed));
    std::ostringstream os;
    os << std::hex << fnv1a64(buf, sizeof(buf));
    return os.str();
}

std::optional<std::filesystem::path> cache_dir_from_env() {
    const char* v = std::getenv("OTOC_LAB_CACHE");
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::filesystem::path(v);
}

std::optional<EigenDecomposition> cache_load(const std::filesystem::path& dir,
                                             const ModelParams& p, HamiltonianKind kind) {
    const auto path = dir / ("otoc-" + cache_key(p, kind) + ".eigd");
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;

    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0) return std::nullopt;

    std::uint32_t version = 0, kind_raw = 0, has_par = 0;
    std::int32_t n = 0, dim = 0;
    double u = 0, j = 0, j_a = 0, w = 0;
    if (!get(is, version) || version != kVersion) return std::nullopt;
    if (!get(is, kind_raw) || kind_raw != static_cast<std::uint32_t>(kind)) return std::nullopt;
    if (!get(is, n) || !get(is, dim) || !get(is, has_par)) return std::nullopt;
    if (!get(is, u) || !get(is, j) || !get(is, j_a) || !get(is, w)) return std::nullopt;
    if (n != p.n || u != p.u || j != p.j || j_a != p.j_a || w != p.w) return std::nullopt;
    if (dim <= 0 || dim > 1 << 20) return std::nullopt;

    EigenDecomposition d;
    d.params = p;
    d.energies.resize(dim);
    d.states.resize(dim, dim);
    is.read(reinterpret_cast<char*>(d.energies.data()), sizeof(double) * dim);
    Eigen::MatrixXd rows(dim, dim);
    is.read(reinterpret_cast<char*>(rows.data()), sizeof(double) * dim * dim);
    d.states = rows.transpose(); // file is row-major
    d.parities = Eigen::VectorXi::Zero(dim);
    if (has_par)
        is.read(reinterpret_cast<char*>(d.parities.data()), sizeof(std::int32_t) * dim);
    if (!is) return std::nullopt;
    return d;
}

void cache_store(const std::filesystem::path& dir, const EigenDecomposition& d,
                 HamiltonianKind kind) {
    std::filesystem::create_directories(dir);
    const auto path = dir / ("otoc-" + cache_key(d.params, kind) + ".eigd");
    const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cache_store: cannot write " + tmp);
        os.write(kMagic, 8);
        put(os, kVersion);
        put(os, static_cast<std::uint32_t>(kind));
        put(os, static_cast<std::int32_t>(d.params.n));
        put(os, static_cast<std::int32_t>(d.dim()));
        put(os, static_cast<std::uint32_t>(d.parities.any() ? 1 : 0));
        put(os, d.params.u);
        put(os, d.params.j);
        put(os, d.params.j_a);
        put(os, d.params.w);
        os.write(reinterpret_cast<const char*>(d.energies.data()),
                 sizeof(double) * d.dim());
        const Eigen::MatrixXd rows = d.states.transpose();
        os.write(reinterpret_cast<const char*>(rows.data()),
                 sizeof(double) * d.dim() * d.dim());
        if (d.parities.any())
            os.write(reinterpret_cast<const char*>(d.parities.data()),
                     sizeof(std::int32_t) * d.dim());
        if (!os) throw std::runtime_error("cache_store: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

EigenDecomposition diagonalize_cached(const ModelParams& p, HamiltonianKind kind,
                                      const std::optional<std::filesystem::path>& dir) {
    if (dir) {
        if (auto hit = cache_load(*dir, p, kind)) return *hit;
    }
    EigenDecomposition d = compute(p, kind);
    if (dir) cache_store(*dir, d, kind);
    return d;
}

} // namespace otoc
