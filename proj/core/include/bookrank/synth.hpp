#pragma once

#include "bookrank/ledger.hpp"

#include <cstdint>

namespace bookrank {

/// Knobs for the seeded synthetic ledger. The paper's data is proprietary;
/// these defaults are documented stand-ins sized for desk-scale runs, not
/// calibrated to any production book. Renewal cadence is fixed at 12 months
/// from each account's anchor.
struct SynthConfig {
    std::uint64_t seed = 42;
    int n_reps = 60;
    int accounts_per_rep_min = 5;
    int accounts_per_rep_max = 60; // generator hard-caps at 60
    int n_products = 3;
    int horizon_months = 24;
    Date horizon_start = Date::from_ymd(2023, 1, 1);

    // Event shape frequencies (per cycle): mid-cycle add-on and
    // non-co-term add-on, which starts its own renewal chain.
    double p_addon = 0.35;
    double p_nct_addon = 0.15;

    // Realization noise of event deltas relative to the true-signal s.d.
    double label_noise = 0.25;

    TreatmentEffectConfig effects;

    friend bool operator==(const SynthConfig&, const SynthConfig&) = default;
};

/// Rep skill derived from observable confounders only (region, segment,
/// coarsened tenure), so that matching on those bins removes all
/// confounding by construction. Scaled by effects.confounding_strength.
double synth_rep_skill(Region region, Segment segment, int tenure_months,
                       double confounding_strength);

/// Tenure bin edges used by synth_rep_skill; study fixtures coarsen on the
/// same edges.
inline constexpr double kTenureBinEdges[] = {24.0, 60.0, 96.0};

/// Deterministic seeded ledger with known ground truth: latent usage/ROI/
/// hiring/macro drivers generate true deltas, events cover the single-
/// renewal, add-on and non-co-term chain shapes, and rep adoption behavior
/// is simulated with propensity tied to skill. Pure function of its config.
Ledger generate_synthetic(const SynthConfig& config);

} // namespace bookrank
