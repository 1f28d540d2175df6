#pragma once

#include "tsg/config.hpp"
#include "tsg/model.hpp"

namespace tsg::testing {

/// Two species with cross-conversion; species 1 has the larger carrying
/// capacity (P_H = 3) and invades the other.
inline GrowthModel invasion_model() {
    return GrowthModel(GrowthTerm::affine(1.0, 3.0), GrowthTerm::affine_truncated(1.0, 1.0),
                       GrowthTerm::affine_truncated(1.0, 1.0), GrowthTerm::affine(1.0, 1.0));
}

/// No cross-reactions; used for the segregation studies (P_H = 1).
inline GrowthModel segregated_model() {
    return GrowthModel(GrowthTerm::affine(2.0, 1.0), GrowthTerm::zero(), GrowthTerm::zero(),
                       GrowthTerm::affine(1.0, 1.0));
}

inline GrowthModel zero_model() { return GrowthModel(); }

inline void set_invasion_terms(RunConfig& cfg) {
    cfg.f1 = GrowthTerm::affine(1.0, 3.0);
    cfg.f2 = GrowthTerm::affine_truncated(1.0, 1.0);
    cfg.g1 = GrowthTerm::affine_truncated(1.0, 1.0);
    cfg.g2 = GrowthTerm::affine(1.0, 1.0);
}

inline void set_segregated_terms(RunConfig& cfg) {
    cfg.f1 = GrowthTerm::affine(2.0, 1.0);
    cfg.f2 = GrowthTerm::zero();
    cfg.g1 = GrowthTerm::zero();
    cfg.g2 = GrowthTerm::affine(1.0, 1.0);
}

} // namespace tsg::testing
