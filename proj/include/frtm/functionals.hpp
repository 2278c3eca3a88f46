#ifndef FRTM_FUNCTIONALS_HPP
#define FRTM_FUNCTIONALS_HPP

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "frtm/grid.hpp"
#include "frtm/spectral.hpp"

namespace frtm {

/** Exponent of the exponential integrand. pi is critical here. */
struct Exponent {
    double alpha;

    explicit Exponent(double a) : alpha(a) {
        if (!(alpha > 0.0)) throw std::invalid_argument("Exponent: alpha must be positive");
    }
    bool subcritical() const { return alpha < std::numbers::pi; }
    bool critical() const { return alpha == std::numbers::pi; }
    bool supercritical() const { return alpha > std::numbers::pi; }
};

// e^t overflows IEEE double near t = 709; we guard at 700.
inline constexpr double kExpGuard = 700.0;

inline double guarded_exp_arg(double alpha, double t) {
    const double a = alpha * t * t;
    if (a > kExpGuard)
        throw overflow_error("exponent alpha*t^2 exceeds the e^700 overflow guard");
    return a;
}

/** Phi_alpha(t) = e^{alpha t^2} - 1. */
inline double phi_alpha(double t, const Exponent& e) {
    return std::expm1(guarded_exp_arg(e.alpha, t));
}

/** Psi_alpha(t) = e^{alpha t^2} - 1 - alpha t^2. */
inline double psi_alpha(double t, const Exponent& e) {
    const double a = guarded_exp_arg(e.alpha, t);
    return std::expm1(a) - a;
}

/** \int (e^{alpha f^2} - 1) dx. */
inline double tm_integral(const GridFunction& f, const Exponent& e) {
    double s = 0.0;
    for (double v : f.values) s += std::expm1(guarded_exp_arg(e.alpha, v));
    return s * f.grid.spacing();
}

/** \int f^2 e^{alpha f^2} dx. */
inline double weighted_tm_integral(const GridFunction& f, const Exponent& e) {
    double s = 0.0;
    for (double v : f.values) s += v * v * std::exp(guarded_exp_arg(e.alpha, v));
    return s * f.grid.spacing();
}

enum class FunctionalKind {
    AdachiTanaka,           // sup of tm/||u||_2^2 under seminorm <= 1
    AdachiTanakaNormalized, // sup of tm under seminorm <= 1, ||u||_2 = 1
    LiRuf,                  // sup of tm under full norm <= 1
    DongLuE,                // sup of \int u^2 e^{a u^2}/||u||_2^2 under seminorm <= 1
    DongLuF,                // sup of \int u^2 e^{b u^2} under full norm <= 1
};

inline std::string to_string(FunctionalKind k) {
    switch (k) {
        case FunctionalKind::AdachiTanaka: return "adachi-tanaka";
        case FunctionalKind::AdachiTanakaNormalized: return "adachi-tanaka-normalized";
        case FunctionalKind::LiRuf: return "li-ruf";
        case FunctionalKind::DongLuE: return "dong-lu-e";
        case FunctionalKind::DongLuF: return "dong-lu-f";
    }
    return "?";
}

struct FunctionalSpec {
    FunctionalKind kind;
    Exponent exponent;
};

/** Evaluation record. Constraints are reported as residuals, never silently
 *  enforced, so the same evaluator serves admissibility checks and optimizer
 *  line searches. */
struct FunctionalValue {
    double value = 0.0;
    double numerator = 0.0;
    double denominator = 1.0;
    std::map<std::string, double> constraint_residuals;
};

inline FunctionalValue evaluate(const FunctionalSpec& spec, const GridFunction& f) {
    const bool ratio_kind = spec.kind == FunctionalKind::AdachiTanaka ||
                            spec.kind == FunctionalKind::DongLuE;
    const double b = l2_norm_sq(f);
    if (ratio_kind && b == 0.0)
        throw std::invalid_argument("evaluate: ratio functional requires nonzero input");

    const double semi = seminorm_fourier_sq(f);
    FunctionalValue out;
    switch (spec.kind) {
        case FunctionalKind::AdachiTanaka:
            out.numerator = tm_integral(f, spec.exponent);
            out.denominator = b;
            out.constraint_residuals["seminorm-1"] = std::sqrt(semi) - 1.0;
            break;
        case FunctionalKind::AdachiTanakaNormalized:
            out.numerator = tm_integral(f, spec.exponent);
            out.denominator = 1.0;
            out.constraint_residuals["seminorm-1"] = std::sqrt(semi) - 1.0;
            out.constraint_residuals["l2-1"] = std::sqrt(b) - 1.0;
            break;
        case FunctionalKind::LiRuf:
            out.numerator = tm_integral(f, spec.exponent);
            out.denominator = 1.0;
            out.constraint_residuals["h12-1"] = std::sqrt(semi + b) - 1.0;
            break;
        case FunctionalKind::DongLuE:
            out.numerator = weighted_tm_integral(f, spec.exponent);
            out.denominator = b;
            out.constraint_residuals["seminorm-1"] = std::sqrt(semi) - 1.0;
            break;
        case FunctionalKind::DongLuF:
            out.numerator = weighted_tm_integral(f, spec.exponent);
            out.denominator = 1.0;
            out.constraint_residuals["h12-1"] = std::sqrt(semi + b) - 1.0;
            break;
    }
    out.value = out.numerator / out.denominator;
    return out;
}

/** Dilation u(lambda x) with lambda = ||u||_2^2; in the continuum this pins
 *  ||u||_2 = 1 and leaves the seminorm untouched. */
inline GridFunction normalize_adachi(const GridFunction& f, bool* truncated = nullptr) {
    const double b = l2_norm_sq(f);
    if (b == 0.0) throw std::invalid_argument("normalize_adachi: zero function");
    return dilate(f, b, truncated);
}

/** Transport of an admissible subcritical test function into the full-norm
 *  ball: v = C u(lambda x) with C^2 = alpha/pi, lambda = C^2/(1-C^2). */
inline GridFunction transport_to_B(const GridFunction& f, const Exponent& e) {
    if (!e.subcritical())
        throw std::invalid_argument("transport_to_B: requires alpha < pi");
    const double semi = seminorm_fourier_sq(f);
    const double b = l2_norm_sq(f);
    if (semi > 1.0 + 5e-3 || std::abs(b - 1.0) > 5e-3)
        throw std::invalid_argument(
            "transport_to_B: input must satisfy seminorm <= 1 and ||u||_2 = 1");

    const double c2 = e.alpha / std::numbers::pi;
    const double lambda = c2 / (1.0 - c2);

    // guard both failure modes of the discrete dilation
    GridFunction v = dilate(f, lambda);
    if (lambda < 1.0) {
        // expanding: the image support (1/lambda)*supp(f) is chopped at +-L;
        // tolerable only while the lost mass cannot move the identity
        double tail = 0.0;
        for (std::size_t k = 0; k < f.grid.n; ++k)
            if (std::abs(f.grid.node(k)) > lambda * f.grid.half_width)
                tail += f.values[k] * f.values[k];
        if (tail * f.grid.spacing() / b > 1e-2)
            throw resolution_error("transport_to_B: dilated support exceeds the grid");
    }
    if (lambda > 1.0) {
        // shrinking: require the result to remain resolved
        const double h = f.grid.spacing();
        double width = 0.0;
        const double tiny = 1e-10 * (1.0 + sup_norm(v));
        for (std::size_t k = 0; k < v.grid.n; ++k)
            if (std::abs(v.values[k]) > tiny)
                width = std::max(width, std::abs(v.grid.node(k)));
        if (width < 8.0 * h)
            throw resolution_error("transport_to_B: image support under-resolved");
    }
    const double c = std::sqrt(c2);
    for (double& x : v.values) x *= c;
    return v;
}

/** ((1 - alpha/pi)/(alpha/pi)) * a_value: a certified lower bound for B(pi)
 *  whenever a_value certifies a lower bound for A(alpha). */
inline double relation_bound(const Exponent& e, double a_value) {
    if (!e.subcritical())
        throw std::invalid_argument("relation_bound: requires alpha in (0, pi)");
    if (a_value < 0.0) throw std::invalid_argument("relation_bound: a_value must be >= 0");
    const double r = e.alpha / std::numbers::pi;
    return (1.0 - r) / r * a_value;
}

} // namespace frtm

#endif
