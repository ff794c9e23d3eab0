#include "otoclab/params.hpp"

#include <cmath>
#include <sstream>

namespace otoc {

double ModelParams::capital_lambda() const {
    if (j == 0.0)
        throw std::domain_error("capital_lambda: j = 0, Lambda undefined");
    return u * n / (2.0 * j);
}

double ModelParams::lambda_c() const {
    if (j_a <= 0.0)
        throw std::domain_error("lambda_c: requires j_a > 0");
    return w * w / (4.0 * j_a) - 1.0;
}

double ModelParams::reduced_lambda() const {
    const double lc = lambda_c();
    if (lc == 0.0) throw critical_coupling_zero{};
    return (capital_lambda() - lc) / std::abs(lc);
}

ModelParams ModelParams::with_u(double new_u) const {
    ModelParams q = *this;
    q.u = new_u;
    return q;
}

ModelParams ModelParams::with_capital_lambda(double cap_lambda) const {
    return with_u(u_for_capital_lambda(cap_lambda, *this));
}

ModelParams ModelParams::with_reduced_lambda(double lambda) const {
    return with_u(u_for_lambda(lambda, *this));
}

void validate(const ModelParams& p) {
    if (p.n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
    if (!(p.j >= 0.0)) throw std::invalid_argument("ModelParams: j must be >= 0");
    for (double v : {p.u, p.j, p.j_a, p.w})
        if (!std::isfinite(v))
            throw std::invalid_argument("ModelParams: couplings must be finite");
}

double u_for_capital_lambda(double cap_lambda, const ModelParams& p) {
    if (p.j == 0.0)
        throw std::domain_error("u_for_capital_lambda: j = 0");
    return 2.0 * p.j * cap_lambda / p.n;
}

double u_for_lambda(double lambda_target, const ModelParams& p) {
    const double lc = p.lambda_c();
    if (lc == 0.0 && lambda_target != 0.0) throw critical_coupling_zero{};
    return u_for_capital_lambda(lc + lambda_target * std::abs(lc), p);
}

std::string describe(const ModelParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << p.n << " u=" << p.u << " j=" << p.j << " ja=" << p.j_a
       << " w=" << p.w;
    return os.str();
}

} // namespace otoc
