#pragma once

#include "bookrank/ledger.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace bookrank {

/// What a label measures: overall account spend, or one product's units.
struct LabelScope {
    enum class Kind { AccountSpend, ProductQuantity };
    Kind kind = Kind::AccountSpend;
    std::optional<std::string> product_id; // present iff ProductQuantity

    static LabelScope account_spend() { return {Kind::AccountSpend, std::nullopt}; }
    static LabelScope product_quantity(std::string product_id) {
        return {Kind::ProductQuantity, std::move(product_id)};
    }

    friend bool operator==(const LabelScope&, const LabelScope&) = default;
    friend auto operator<=>(const LabelScope&, const LabelScope&) = default;
};

std::string to_string(const LabelScope& scope);

/// One training row. The target is the cumulative delta from the pre-cycle
/// baseline through observed_at: money (cents) for account scope, units for
/// product scope. Features are frozen at the cycle start, so
/// feature_snapshot_at == baseline_at for every sample of a cycle.
struct LabelSample {
    std::string account_id;
    LabelScope scope;
    Date baseline_at;    // cycle start, just before the opening renewal books
    Date observed_at;    // event boundary this sample runs through
    Date feature_snapshot_at;
    double target = 0;

    friend bool operator==(const LabelSample&, const LabelSample&) = default;
};

/// Ordered boundary dates of the cycle starting at cycle_start: one per event
/// date, covering the opening renewal, add-ons, non-co-term add-ons and the
/// renewals of non-co-term chains opened inside this cycle. A cycle with no
/// events at all yields the cycle end as its single boundary, so flat
/// accounts still produce a (zero-target) sample.
/// Throws NoCycleError when cycle_start is not on the account's renewal
/// schedule.
std::vector<Date> window_boundaries(const Ledger& ledger, std::string_view account_id,
                                    const Date& cycle_start);

/// One sample per boundary, target cumulative through that boundary.
std::vector<LabelSample> build_samples(const Ledger& ledger, std::string_view account_id,
                                       const Date& cycle_start, const LabelScope& scope);

struct TrainingSet {
    std::vector<LabelSample> account_spend;
    std::map<std::string, std::vector<LabelSample>> product_quantity; // by product id

    size_t total_samples() const;
};

/// Union of build_samples over every account and every cycle, keeping only
/// samples observed at or before as_of (no leakage) and within the lookback.
TrainingSet build_training_set(const Ledger& ledger, const Date& as_of, int lookback_months);

} // namespace bookrank
