#pragma once

#include <array>
#include <string>
#include <vector>

namespace tsg {

enum class GrowthKind { zero, affine, affine_truncated };

/// One growth function from the parametric family:
///   affine            a (1 - p/b)
///   affine_truncated  a max(1 - p/b, 0)
///   zero              0
/// with a >= 0, b > 0 for the non-zero kinds.
struct GrowthTerm {
    GrowthKind kind = GrowthKind::zero;
    double amplitude = 0.0; // a
    double threshold = 1.0; // b

    static GrowthTerm zero() { return {}; }
    static GrowthTerm affine(double a, double b);
    static GrowthTerm affine_truncated(double a, double b);

    double value(double p) const;
    /// One-sided derivative from below at the truncation kink.
    double derivative(double p) const;
    /// Antiderivative with value 0 at p = 0 (piecewise quadratic).
    double antiderivative(double p) const;

    bool is_zero() const { return kind == GrowthKind::zero || amplitude == 0.0; }
    std::string to_string() const;
};

struct Rates {
    double f1, f2, g1, g2;
    double f; // F = F1 + F2
    double g; // G = G1 + G2
};

struct RateDerivatives {
    double f1, f2, g1, g2, f, g;
};

struct FeasibilityReport {
    bool bounded_c1 = false;         // (i)
    bool monotone = false;           // (ii) F1, G2 strictly decreasing; F2, G1 non-increasing
    bool homeostatic_exists = false; // (iii)
    bool balanced_at_zero = false;   // (iv) F(0) = G(0); violation is a warning only
    double f_at_zero = 0.0;
    double g_at_zero = 0.0;
    std::vector<std::string> notes;

    /// (i)-(iii) are hard requirements; (iv) only warns.
    bool feasible() const { return bounded_c1 && monotone && homeostatic_exists; }
};

/// The four reaction functions of the two-species system together with the
/// derived constants: homeostatic pressure P_H (smallest p beyond which
/// F1, G2 <= 0 and the cross terms vanish) and the reaction bound R_inf
/// (sup of |F|, |G| over [0, P_H]).
class GrowthModel {
public:
    GrowthModel() = default;
    /// Throws InfeasibleModelError when a cross term is plain affine with
    /// a > 0 (it never vanishes identically, so no P_H exists).
    GrowthModel(GrowthTerm F1, GrowthTerm F2, GrowthTerm G1, GrowthTerm G2);

    Rates eval_rates(double p) const;
    RateDerivatives eval_rate_derivatives(double p) const;
    /// (H1, H2) with H1' = F, H2' = G, H1(0) = H2(0) = 0.
    std::pair<double, double> antiderivatives(double p) const;

    double homeostatic_pressure() const { return p_homeostatic_; }
    double reaction_bound() const { return r_inf_; }

    FeasibilityReport check_feasibility() const;

    const GrowthTerm& F1() const { return f1_; }
    const GrowthTerm& F2() const { return f2_; }
    const GrowthTerm& G1() const { return g1_; }
    const GrowthTerm& G2() const { return g2_; }

    bool has_cross_reactions() const { return !f2_.is_zero() || !g1_.is_zero(); }

private:
    GrowthTerm f1_, f2_, g1_, g2_;
    double p_homeostatic_ = 0.0;
    double r_inf_ = 0.0;
};

} // namespace tsg
