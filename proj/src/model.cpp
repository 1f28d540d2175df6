#include "tsg/model.hpp"

#include "tsg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tsg {

namespace {

void check_pressure_arg(double p) {
    if (p < 0.0 || !std::isfinite(p))
        throw NumericalError("growth functions are defined for p >= 0, got p = " + std::to_string(p));
}

} // namespace

GrowthTerm GrowthTerm::affine(double a, double b) {
    if (a < 0.0 || b <= 0.0)
        throw ConfigError("affine growth term needs a >= 0 and b > 0");
    return {GrowthKind::affine, a, b};
}

GrowthTerm GrowthTerm::affine_truncated(double a, double b) {
    if (a < 0.0 || b <= 0.0)
        throw ConfigError("affine_truncated growth term needs a >= 0 and b > 0");
    return {GrowthKind::affine_truncated, a, b};
}

double GrowthTerm::value(double p) const {
    switch (kind) {
    case GrowthKind::zero:
        return 0.0;
    case GrowthKind::affine:
        return amplitude * (1.0 - p / threshold);
    case GrowthKind::affine_truncated:
        return amplitude * std::max(1.0 - p / threshold, 0.0);
    }
    return 0.0;
}

double GrowthTerm::derivative(double p) const {
    switch (kind) {
    case GrowthKind::zero:
        return 0.0;
    case GrowthKind::affine:
        return -amplitude / threshold;
    case GrowthKind::affine_truncated:
        // one-sided from below at the kink p == threshold
        return p <= threshold ? -amplitude / threshold : 0.0;
    }
    return 0.0;
}

double GrowthTerm::antiderivative(double p) const {
    switch (kind) {
    case GrowthKind::zero:
        return 0.0;
    case GrowthKind::affine:
        return amplitude * (p - p * p / (2.0 * threshold));
    case GrowthKind::affine_truncated:
        if (p <= threshold)
            return amplitude * (p - p * p / (2.0 * threshold));
        return amplitude * threshold / 2.0; // saturated past the kink
    }
    return 0.0;
}

std::string GrowthTerm::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case GrowthKind::zero:
        os << "zero";
        break;
    case GrowthKind::affine:
        os << "affine(" << amplitude << ", " << threshold << ")";
        break;
    case GrowthKind::affine_truncated:
        os << "affine_truncated(" << amplitude << ", " << threshold << ")";
        break;
    }
    return os.str();
}

GrowthModel::GrowthModel(GrowthTerm F1, GrowthTerm F2, GrowthTerm G1, GrowthTerm G2)
    : f1_(F1), f2_(F2), g1_(G1), g2_(G2) {
    // Smallest p beyond which F1, G2 <= 0: the threshold b for affine terms
    // (negative past b), any p for truncated/zero terms (never positive...
    // truncated terms are nonnegative but vanish past b, so b is still the
    // smallest p with value <= 0 when a > 0).
    auto self_threshold = [](const GrowthTerm& t) {
        if (t.is_zero())
            return 0.0;
        return t.threshold;
    };
    // Cross terms must vanish identically beyond some p; a plain affine term
    // with a > 0 turns negative instead and never vanishes.
    auto cross_threshold = [](const GrowthTerm& t, const char* name) {
        if (t.is_zero())
            return 0.0;
        if (t.kind == GrowthKind::affine)
            throw InfeasibleModelError(std::string(name) +
                                       " is plain affine with a > 0; cross-reaction terms must "
                                       "vanish beyond the homeostatic pressure (use "
                                       "affine_truncated or zero)");
        return t.threshold;
    };
    p_homeostatic_ = std::max({self_threshold(f1_), self_threshold(g2_),
                               cross_threshold(f2_, "F2"), cross_threshold(g1_, "G1")});

    // R_inf: sup over [0, P_H] of max(|F|, |G|). The family is piecewise
    // affine, so a dense scan plus the endpoints is exact up to kinks that
    // coincide with scan points anyway (extrema of piecewise-affine functions
    // sit at interval ends or kinks; kinks are thresholds, included below).
    std::vector<double> probes = {0.0, p_homeostatic_};
    for (const GrowthTerm* t : {&f1_, &f2_, &g1_, &g2_})
        if (!t->is_zero() && t->threshold < p_homeostatic_)
            probes.push_back(t->threshold);
    const int scan = 10000;
    for (int i = 1; i < scan; ++i)
        probes.push_back(p_homeostatic_ * i / scan);
    double r = 0.0;
    for (double p : probes) {
        Rates rt = eval_rates(p);
        r = std::max({r, std::abs(rt.f), std::abs(rt.g)});
    }
    r_inf_ = r;
}

Rates GrowthModel::eval_rates(double p) const {
    check_pressure_arg(p);
    Rates r{};
    r.f1 = f1_.value(p);
    r.f2 = f2_.value(p);
    r.g1 = g1_.value(p);
    r.g2 = g2_.value(p);
    r.f = r.f1 + r.f2;
    r.g = r.g1 + r.g2;
    return r;
}

RateDerivatives GrowthModel::eval_rate_derivatives(double p) const {
    check_pressure_arg(p);
    RateDerivatives d{};
    d.f1 = f1_.derivative(p);
    d.f2 = f2_.derivative(p);
    d.g1 = g1_.derivative(p);
    d.g2 = g2_.derivative(p);
    d.f = d.f1 + d.f2;
    d.g = d.g1 + d.g2;
    return d;
}

std::pair<double, double> GrowthModel::antiderivatives(double p) const {
    check_pressure_arg(p);
    const double h1 = f1_.antiderivative(p) + f2_.antiderivative(p);
    const double h2 = g1_.antiderivative(p) + g2_.antiderivative(p);
    return {h1, h2};
}

FeasibilityReport GrowthModel::check_feasibility() const {
    FeasibilityReport rep;
    // (i) The whole parametric family is C^1-bounded on [0, inf) except for
    // the truncation kink, where the derivative jump is the classic weak-C^1
    // reading; every term has bounded value and slope.
    rep.bounded_c1 = true;

    // (ii) F1, G2 strictly decreasing; truncated terms go flat past the kink
    // and constants are not decreasing at all.
    auto strictly_decreasing = [](const GrowthTerm& t) {
        return t.kind == GrowthKind::affine && t.amplitude > 0.0;
    };
    rep.monotone = strictly_decreasing(f1_) && strictly_decreasing(g2_);
    if (!strictly_decreasing(f1_))
        rep.notes.push_back("F1 = " + f1_.to_string() + " is not strictly decreasing");
    if (!strictly_decreasing(g2_))
        rep.notes.push_back("G2 = " + g2_.to_string() + " is not strictly decreasing");

    // (iii) Construction already threw for impossible cross terms, so P_H
    // exists for any constructed model.
    rep.homeostatic_exists = true;

    // (iv) F(0) = G(0), reported as a warning when violated.
    Rates r0 = eval_rates(0.0);
    rep.f_at_zero = r0.f;
    rep.g_at_zero = r0.g;
    rep.balanced_at_zero = r0.f == r0.g;
    if (!rep.balanced_at_zero) {
        std::ostringstream os;
        os << "warning: F(0) = " << r0.f << " differs from G(0) = " << r0.g
           << "; the vacuum reaction rate depends on the fraction tie-break";
        rep.notes.push_back(os.str());
    }
    return rep;
}

} // namespace tsg
