#ifndef CAPKIN_RATE_HPP
#define CAPKIN_RATE_HPP

#include "capkin/errors.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>

namespace capkin {

/// Families of transition rate functions. Built-in families satisfy the
/// kinetics assumptions by construction:
///   mass_action  K(n,s) = k*n*s
///   saturating   K(n,s) = k * n/(a+n) * s/(b+s)
/// Custom rates are user-supplied two-argument callables registered by name;
/// they are validated numerically before use.
enum class RateKind { mass_action, saturating, custom };

inline const char* rate_kind_name(RateKind k) {
    switch (k) {
    case RateKind::mass_action: return "mass_action";
    case RateKind::saturating: return "saturating";
    case RateKind::custom: return "custom";
    }
    return "?";
}

/// Declarative description of a transition rate, as it appears in input
/// documents (one per edge).
struct RateSpec {
    RateKind kind = RateKind::mass_action;
    double k = 1.0;      // rate coefficient, > 0
    double a = 1.0;      // saturating: donor half-occupancy constant, > 0
    double b = 1.0;      // saturating: space half-occupancy constant, > 0
    std::string name;    // custom: registry key
};

/// Parameter sanity for a rate spec; `where` names the edge for messages.
inline void validate_rate_spec(const RateSpec& spec, const std::string& where) {
    const auto positive_finite = [&](double v, const char* pname) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw RateValidationError(where + ": parameter '" + pname + "' must be positive and finite, got " +
                                      std::to_string(v));
    };
    switch (spec.kind) {
    case RateKind::mass_action:
        positive_finite(spec.k, "k");
        break;
    case RateKind::saturating:
        positive_finite(spec.k, "k");
        positive_finite(spec.a, "a");
        positive_finite(spec.b, "b");
        break;
    case RateKind::custom:
        if (spec.name.empty())
            throw RateValidationError(where + ": custom rate needs a nonempty 'name'");
        break;
    }
}

/// Two-argument rate callable used for custom rate kinds: f(n, s).
using RateFn = std::function<double(double, double)>;

/// Name -> callable table for custom rates. Input documents can only refer
/// to custom rates by name; library callers register the callables here.
class RateRegistry {
public:
    void add(std::string name, RateFn fn) { fns_[std::move(name)] = std::move(fn); }
    const RateFn* find(const std::string& name) const {
        auto it = fns_.find(name);
        return it == fns_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::string, RateFn> fns_;
};

/// Evaluable two-argument transition rate K(n, s) with partial derivatives.
/// Built-in kinds have analytic partials; custom rates fall back to finite
/// differences that never sample outside the nonnegative quadrant.
class TransitionRate {
public:
    static TransitionRate make(const RateSpec& spec, const RateRegistry* registry = nullptr) {
        TransitionRate r;
        r.spec_ = spec;
        if (spec.kind == RateKind::custom) {
            const RateFn* fn = registry ? registry->find(spec.name) : nullptr;
            if (!fn)
                throw RateValidationError("custom rate '" + spec.name + "' is not registered");
            r.fn_ = *fn;
        }
        return r;
    }

    double value(double n, double s) const {
        switch (spec_.kind) {
        case RateKind::mass_action:
            return spec_.k * n * s;
        case RateKind::saturating:
            return spec_.k * (n / (spec_.a + n)) * (s / (spec_.b + s));
        case RateKind::custom:
            return fn_(n, s);
        }
        return 0.0;
    }

    /// dK/dn at (n, s).
    double dn(double n, double s) const {
        switch (spec_.kind) {
        case RateKind::mass_action:
            return spec_.k * s;
        case RateKind::saturating: {
            const double an = spec_.a + n;
            return spec_.k * (spec_.a / (an * an)) * (s / (spec_.b + s));
        }
        case RateKind::custom:
            return fd_partial([&](double v) { return fn_(v, s); }, n);
        }
        return 0.0;
    }

    /// dK/ds at (n, s).
    double ds(double n, double s) const {
        switch (spec_.kind) {
        case RateKind::mass_action:
            return spec_.k * n;
        case RateKind::saturating: {
            const double bs = spec_.b + s;
            return spec_.k * (n / (spec_.a + n)) * (spec_.b / (bs * bs));
        }
        case RateKind::custom:
            return fd_partial([&](double v) { return fn_(n, v); }, s);
        }
        return 0.0;
    }

    const RateSpec& spec() const { return spec_; }

private:
    template <class F>
    static double fd_partial(F f, double v) {
        const double h = 1e-6 * (1.0 + std::fabs(v));
        if (v - h < 0.0)
            return (f(v + h) - f(v)) / h;       // one-sided at the axis
        return (f(v + h) - f(v - h)) / (2.0 * h);
    }

    RateSpec spec_;
    RateFn fn_;
};

/// Numeric check of the kinetics assumptions on [0,n_max] x [0,s_max]:
///   - values finite and nonnegative on the grid (A1);
///   - nondecreasing in each argument along the grid (A2);
///   - zero whenever either argument is zero (A3).
/// Throws RateValidationError naming the violated assumption and the point.
/// Built-in kinds satisfy these by construction; the check exists so that
/// custom rates are refused instead of silently invalidating analysis
/// results that assume A1-A3.
inline void validate_transition_rate(const TransitionRate& rate, double n_max, double s_max,
                                     const std::string& where) {
    constexpr int kGrid = 21;
    constexpr double kSlack = 1e-8;     // finite-difference monotonicity slack
    double vals[kGrid][kGrid];
    double peak = 0.0;
    const auto coord = [](double hi, int i) { return hi * static_cast<double>(i) / (kGrid - 1); };
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const double n = coord(n_max, i), s = coord(s_max, j);
            const double v = rate.value(n, s);
            if (!std::isfinite(v))
                throw RateValidationError(where + ": rate is not finite at (" + std::to_string(n) +
                                          ", " + std::to_string(s) + ")");
            vals[i][j] = v;
            peak = std::max(peak, std::fabs(v));
        }
    }
    const double zero_tol = 1e-12 * (1.0 + peak);
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const double n = coord(n_max, i), s = coord(s_max, j);
            if (vals[i][j] < -zero_tol)
                throw RateValidationError(where + ": rate is negative at (" + std::to_string(n) +
                                          ", " + std::to_string(s) + ")");
            if ((i == 0 || j == 0) && std::fabs(vals[i][j]) > zero_tol)
                throw RateValidationError(where + ": rate must vanish when an argument is zero "
                                          "(assumption A3), but K(" + std::to_string(n) + ", " +
                                          std::to_string(s) + ") = " + std::to_string(vals[i][j]));
            if (i > 0 && vals[i][j] < vals[i - 1][j] - kSlack * (1.0 + peak))
                throw RateValidationError(where + ": rate decreases in its first argument near (" +
                                          std::to_string(n) + ", " + std::to_string(s) +
                                          ") (assumption A2)");
            if (j > 0 && vals[i][j] < vals[i][j - 1] - kSlack * (1.0 + peak))
                throw RateValidationError(where + ": rate decreases in its second argument near (" +
                                          std::to_string(n) + ", " + std::to_string(s) +
                                          ") (assumption A2)");
        }
    }
}

} // namespace capkin

#endif
