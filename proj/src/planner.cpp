#include "nmc/planner.hpp"

#include <cmath>
#include <string>

#include "nmc/errors.hpp"

namespace nmc {

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

int plan_k0(int n, uint64_t t, double eps, double delta, double c_k) {
    double v = n * (1.0 - binary_entropy(delta)) - std::log2(static_cast<double>(t)) -
               3.0 * std::log2(1.0 / eps) - c_k;
    return static_cast<int>(std::floor(v));
}

uint64_t plan_t0(int n, double family_log_size, double eps, double eta, double c_t) {
    double v = c_t * std::pow(eps, -6.0) * (family_log_size + n + std::log2(1.0 / eta));
    if (!(v >= 1.0)) return 1;
    if (v > 9.2e18) return UINT64_MAX;  // saturate; log2_t0 keeps the real value
    return static_cast<uint64_t>(std::ceil(v));
}

PlannedParams plan_parameters(int n, double family_log_size, double eps, double eta, double delta,
                              const PlannerConstants& constants) {
    if (n < 1) throw ValidationError("plan: n must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("plan: eps must be in (0, 1)");
    if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("plan: eta must be in (0, 1)");
    if (!(delta >= 0.0 && delta < 0.5)) throw ValidationError("plan: delta must be in [0, 1/2)");
    if (!(family_log_size >= 0.0) || !std::isfinite(family_log_size)) {
        throw ValidationError("plan: family_log_size must be finite and >= 0");
    }

    PlannedParams out;
    out.constants = constants;
    out.t0 = plan_t0(n, family_log_size, eps, eta, constants.c_t);
    out.t0_saturated = out.t0 == UINT64_MAX;
    out.log2_t0 = out.t0_saturated
                      ? std::log2(constants.c_t) - 6.0 * std::log2(eps) +
                            std::log2(family_log_size + n + std::log2(1.0 / eta))
                      : std::log2(static_cast<double>(out.t0));
    double v = n * (1.0 - binary_entropy(delta)) - out.log2_t0 - 3.0 * std::log2(1.0 / eps) -
               constants.c_k;
    int k0 = static_cast<int>(std::floor(v));
    if (k0 < 1) {
        throw ValidationError("parameters infeasible: k0 = " + std::to_string(k0) + " < 1");
    }
    out.k0 = k0 > n ? n : k0;
    return out;
}

}  // namespace nmc
