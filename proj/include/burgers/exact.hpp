#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/jet.hpp"
#include "burgers/rng.hpp"

namespace burgers {

/// Constant background pair (u0, v0). Constants solve the system trivially
/// and satisfy the cross-derivative condition u0_y = v0_x = 0.
struct ConstantPair {
    double u0 = 0.0;
    double v0 = 0.0;
};

/// Jet-valued evaluation of a scalar function of (x, y, t).
using JetFn = std::function<Jet(double x, double y, double t, JetOrder order)>;

inline constexpr int kUnlimitedOrder = std::numeric_limits<int>::max();

struct PlaneWaveTerm {
    double a;  // amplitude, must be >= 0
    double k;  // x wavenumber
    double l;  // y wavenumber
};

/// A function phi(x, y, t) asserted to satisfy the drifted heat equation
///   phi_t - phi_xx - phi_yy - 2 u0 phi_x - 2 v0 phi_y = 0
/// and to stay strictly positive wherever it is evaluated.
struct HeatSolution {
    JetFn eval;
    ConstantPair background;
    std::vector<PlaneWaveTerm> terms;  // empty for user-supplied phi
    std::string description;
    int order_budget = kUnlimitedOrder;
};

struct Lineage {
    std::string seed;
    int depth = 0;
};

/// Candidate/confirmed solution pair (u, v) of the coupled system,
/// evaluable as jets of any order up to order_budget.
struct SolutionPair {
    JetFn u;
    JetFn v;
    Lineage lineage;
    int order_budget = kUnlimitedOrder;
};

/// Growth rate making exp(kx + ly + wt) an exact solution of the drifted
/// heat equation for the given background.
inline double plane_wave_rate(double k, double l, const ConstantPair& bg) {
    return k * k + l * l + 2.0 * bg.u0 * k + 2.0 * bg.v0 * l;
}

/// phi(x,y,t) = 1 + sum_i a_i exp(k_i x + l_i y + w_i t), with each rate
/// w_i chosen so the linear constraint holds identically. Non-negative
/// amplitudes plus the constant term keep phi > 0 everywhere.
inline HeatSolution make_plane_wave_seed(const ConstantPair& background,
                                         std::vector<PlaneWaveTerm> terms) {
    for (const auto& term : terms)
        if (term.a < 0.0)
            throw NonPositiveSeed("plane-wave amplitude must be non-negative");

    std::string desc = "plane-wave[";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) desc += ";";
        desc += "(" + std::to_string(terms[i].a) + "," + std::to_string(terms[i].k) + "," +
                std::to_string(terms[i].l) + ")";
    }
    desc += "]";

    HeatSolution phi;
    phi.background = background;
    phi.terms = terms;
    phi.description = desc;
    phi.eval = [background, terms = std::move(terms)](double x, double y, double t,
                                                      JetOrder order) {
        Jet acc = Jet::constant(1.0, order);
        const Jet jx = Jet::variable(Axis::X, x, order);
        const Jet jy = Jet::variable(Axis::Y, y, order);
        const Jet jt = Jet::variable(Axis::T, t, order);
        for (const auto& term : terms) {
            const double w = plane_wave_rate(term.k, term.l, background);
            acc = acc + term.a * exp(jx * term.k + jy * term.l + jt * w);
        }
        return acc;
    };
    return phi;
}

/// The trivial pair u = u0, v = v0 as a SolutionPair (depth 0, no seed).
inline SolutionPair constant_solution(const ConstantPair& bg) {
    SolutionPair pair;
    pair.u = [c = bg.u0](double, double, double, JetOrder order) {
        return Jet::constant(c, order);
    };
    pair.v = [c = bg.v0](double, double, double, JetOrder order) {
        return Jet::constant(c, order);
    };
    pair.lineage = {"constant", 0};
    return pair;
}

namespace detail {

inline Jet eval_budgeted(const JetFn& fn, double x, double y, double t, JetOrder order,
                         int budget) {
    if (order.max_order > budget)
        throw OrderExhausted("input jets cannot supply the requested derivative order");
    return fn(x, y, t, order);
}

/// Positive phi is a heat-seed invariant; the general transformation only
/// needs phi bounded away from zero.
enum class PhiGuard { Positive, NonZero };

inline Jet phi_checked(const JetFn& eval, double x, double y, double t, JetOrder order,
                       int budget, PhiGuard guard) {
    const Jet phi = eval_budgeted(eval, x, y, t, order, budget);
    if (guard == PhiGuard::Positive) {
        if (phi.value() <= kDivisorFloor)
            throw PhiNonPositive("phi <= divisor floor at evaluation point");
    } else if (std::abs(phi.value()) <= kDivisorFloor) {
        throw DivisorTooSmall("phi vanishes at evaluation point");
    }
    return phi;
}

}  // namespace detail

/// General Backlund lift: given phi solving the drifted linear equation for
/// the background pair (u_b, v_b), produce u = phi_x / phi + u_b and
/// v = phi_y / phi + v_b. Backgrounds are function pairs here; the constant
/// background case is cole_hopf_lift.
inline SolutionPair backlund_lift(const JetFn& phi, int phi_budget, const SolutionPair& base,
                                  Lineage lineage,
                                  detail::PhiGuard guard = detail::PhiGuard::NonZero) {
    const int budget =
        std::min(phi_budget == kUnlimitedOrder ? kUnlimitedOrder : phi_budget - 1,
                 base.order_budget == kUnlimitedOrder ? kUnlimitedOrder : base.order_budget);
    SolutionPair out;
    out.u = [phi, phi_budget, guard, ub = base.u, bb = base.order_budget](
                double x, double y, double t, JetOrder order) {
        const Jet ph =
            detail::phi_checked(phi, x, y, t, JetOrder(order.max_order + 1), phi_budget, guard);
        return ph.derivative(Axis::X) / ph.truncate(order) +
               detail::eval_budgeted(ub, x, y, t, order, bb);
    };
    out.v = [phi, phi_budget, guard, vb = base.v, bb = base.order_budget](
                double x, double y, double t, JetOrder order) {
        const Jet ph =
            detail::phi_checked(phi, x, y, t, JetOrder(order.max_order + 1), phi_budget, guard);
        return ph.derivative(Axis::Y) / ph.truncate(order) +
               detail::eval_budgeted(vb, x, y, t, order, bb);
    };
    out.lineage = std::move(lineage);
    out.order_budget = budget;
    return out;
}

/// Cole-Hopf style lift over a constant background:
///   u = phi_x / phi + u0,  v = phi_y / phi + v0.
/// The u0 = v0 = 0 case is the classical Cole-Hopf transformation.
inline SolutionPair cole_hopf_lift(const HeatSolution& phi, const ConstantPair& background) {
    return backlund_lift(phi.eval, phi.order_budget, constant_solution(background),
                         {phi.description, 0}, detail::PhiGuard::Positive);
}

/// One application of the recurrence
///   u' = (u_x + v_x)/(u + v) + u,   v' = (u_y + v_y)/(u + v) + v.
/// Evaluating the new pair at order n consumes order n + 1 of the input.
inline SolutionPair recurrence_step(const SolutionPair& pair) {
    auto component = [u = pair.u, v = pair.v, budget = pair.order_budget](
                         Axis axis, const JetFn& self) {
        return [u, v, budget, axis, self](double x, double y, double t, JetOrder order) {
            const JetOrder up(order.max_order + 1);
            const Jet sum = detail::eval_budgeted(u, x, y, t, up, budget) +
                            detail::eval_budgeted(v, x, y, t, up, budget);
            if (std::abs(sum.value()) <= kDivisorFloor)
                throw DivisorTooSmall("u + v vanishes at evaluation point");
            return sum.derivative(axis) / sum.truncate(order) +
                   detail::eval_budgeted(self, x, y, t, order, budget);
        };
    };
    SolutionPair out;
    out.u = component(Axis::X, pair.u);
    out.v = component(Axis::Y, pair.v);
    out.lineage = {pair.lineage.seed, pair.lineage.depth + 1};
    out.order_budget =
        pair.order_budget == kUnlimitedOrder ? kUnlimitedOrder : pair.order_budget - 1;
    return out;
}

/// Residual of both components of the coupled system at one point:
///   r1 = u_t - u_xx - u_yy - 2 u u_x - 2 v u_y
///   r2 = v_t - v_xx - v_yy - 2 u v_x - 2 v v_y
inline std::pair<double, double> burgers_residual(const SolutionPair& pair, double x, double y,
                                                  double t, JetOrder order) {
    if (order.max_order < 2)
        throw OrderExceeded("residual evaluation needs order >= 2");
    const Jet u = detail::eval_budgeted(pair.u, x, y, t, order, pair.order_budget);
    const Jet v = detail::eval_budgeted(pair.v, x, y, t, order, pair.order_budget);
    const double r1 = u.partial(0, 0, 1) - u.partial(2, 0, 0) - u.partial(0, 2, 0) -
                      2.0 * u.value() * u.partial(1, 0, 0) - 2.0 * v.value() * u.partial(0, 1, 0);
    const double r2 = v.partial(0, 0, 1) - v.partial(2, 0, 0) - v.partial(0, 2, 0) -
                      2.0 * u.value() * v.partial(1, 0, 0) - 2.0 * v.value() * v.partial(0, 1, 0);
    return {r1, r2};
}

/// Cross-derivative mismatch u_y - v_x at one point.
inline double compatibility_residual(const SolutionPair& pair, double x, double y, double t,
                                     JetOrder order) {
    if (order.max_order < 1)
        throw OrderExceeded("compatibility evaluation needs order >= 1");
    const Jet u = detail::eval_budgeted(pair.u, x, y, t, order, pair.order_budget);
    const Jet v = detail::eval_budgeted(pair.v, x, y, t, order, pair.order_budget);
    return u.partial(0, 1, 0) - v.partial(1, 0, 0);
}

/// Residual of the drifted linear equation
///   phi_t - phi_xx - phi_yy - 2 u0 phi_x - 2 v0 phi_y
/// at one point, derivatives taken from jets.
inline double heat_residual(const HeatSolution& phi, const ConstantPair& bg, double x, double y,
                            double t) {
    const Jet p = detail::eval_budgeted(phi.eval, x, y, t, JetOrder(2), phi.order_budget);
    return p.partial(0, 0, 1) - p.partial(2, 0, 0) - p.partial(0, 2, 0) -
           2.0 * bg.u0 * p.partial(1, 0, 0) - 2.0 * bg.v0 * p.partial(0, 1, 0);
}

struct ValidationReport {
    double max_heat_residual = 0.0;    // linear-equation residual over samples
    double max_compat_residual = 0.0;  // background u_y - v_x over samples
    double min_phi = std::numeric_limits<double>::infinity();

    bool pass(double heat_tol, double compat_tol) const {
        return max_heat_residual <= heat_tol && max_compat_residual <= compat_tol &&
               min_phi > 0.0;
    }
};

/// Checks the transformation premises over sample points: phi solves the
/// linear equation, phi stays positive, and the background pair satisfies
/// the cross-derivative condition (identically zero for constants).
inline ValidationReport validate_bt_premises(const HeatSolution& phi, const ConstantPair& bg,
                                             const std::vector<Point3>& samples) {
    ValidationReport report;
    report.max_compat_residual = 0.0;  // constant background: u0_y = v0_x = 0 exactly
    for (const auto& p : samples) {
        report.max_heat_residual =
            std::max(report.max_heat_residual, std::abs(heat_residual(phi, bg, p.x, p.y, p.t)));
        report.min_phi = std::min(report.min_phi, phi.eval(p.x, p.y, p.t, JetOrder(0)).value());
    }
    return report;
}

/// Overload for a general (function) background pair, as produced by the
/// recurrence: additionally measures u_y - v_x of the background.
inline ValidationReport validate_bt_premises(const HeatSolution& phi, const SolutionPair& bg,
                                             const std::vector<Point3>& samples) {
    ValidationReport report;
    for (const auto& p : samples) {
        const Jet u = detail::eval_budgeted(bg.u, p.x, p.y, p.t, JetOrder(2), bg.order_budget);
        const Jet v = detail::eval_budgeted(bg.v, p.x, p.y, p.t, JetOrder(2), bg.order_budget);
        // the residual at a point only involves the background values there
        const ConstantPair local{u.value(), v.value()};
        report.max_heat_residual = std::max(report.max_heat_residual,
                                            std::abs(heat_residual(phi, local, p.x, p.y, p.t)));
        report.max_compat_residual =
            std::max(report.max_compat_residual,
                     std::abs(u.partial(0, 1, 0) - v.partial(1, 0, 0)));
        report.min_phi = std::min(report.min_phi, phi.eval(p.x, p.y, p.t, JetOrder(0)).value());
    }
    return report;
}

}  // namespace burgers
