#pragma once

#include "bookrank/date.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bookrank {

/// Money is integer cents throughout; bookings sums stay exact.
using Cents = std::int64_t;

enum class Region { Amer, Emea, Apac };
enum class Segment { Smb, MidMarket, Enterprise };
enum class SizeBand { Small, Medium, Large, XLarge };

/// Purchase event kinds on the bookings timeline. An add_on renews with the
/// main contract; an add_on_non_co_term starts its own renewal chain whose
/// later non_co_term_renewal events reference the same contract id.
enum class EventKind { Renewal, AddOn, AddOnNonCoTerm, NonCoTermRenewal };

std::string_view to_string(Region);
std::string_view to_string(Segment);
std::string_view to_string(SizeBand);
std::string_view to_string(EventKind);
Region region_from_string(std::string_view);
Segment segment_from_string(std::string_view);
SizeBand size_band_from_string(std::string_view);
EventKind event_kind_from_string(std::string_view);

struct Product {
    std::string id;
    std::string name;
    Cents unit_price = 0;

    friend bool operator==(const Product&, const Product&) = default;
};

struct Rep {
    std::string id;
    Region region = Region::Amer;
    Segment segment = Segment::Smb;
    int tenure_months = 0;

    friend bool operator==(const Rep&, const Rep&) = default;
};

/// Observable account health metrics frozen at a cycle start. Prev/curr pairs
/// span the two trailing years so the featurizer can derive rates and changes.
struct MetricsSnapshot {
    Date at;
    double seats_active_prev = 0, seats_active_curr = 0;
    double seats_total_prev = 0, seats_total_curr = 0;
    double messages_sent_prev = 0, messages_sent_curr = 0;
    double messages_accepted_prev = 0, messages_accepted_curr = 0;
    double hires_prev = 0, hires_curr = 0;
    double job_views_prev = 0, job_views_curr = 0;
    double job_posts_prev = 0, job_posts_curr = 0;
    double hiring_trend = 0;
    double attrition_rate = 0;
    double other_lob_spend = 0;
    double online_subs_spend = 0;
    double macro_index = 0;
    double yoy_bookings_growth = 0;

    friend bool operator==(const MetricsSnapshot&, const MetricsSnapshot&) = default;
};

struct Account {
    std::string id;
    std::string rep_id;
    Region region = Region::Amer;
    Segment segment = Segment::Smb;
    SizeBand size_band = SizeBand::Small;
    Cents base_spend = 0;    // spend level entering the horizon (ps)
    Date renewal_anchor;     // first in-horizon renewal date; cadence is 12 months
    Cents renewal_target = 0;
    std::map<std::string, int> baseline_quantities; // product -> units entering the horizon
    std::vector<MetricsSnapshot> metrics;           // one per cycle start, ascending

    friend bool operator==(const Account&, const Account&) = default;
};

struct QuantityEvent {
    std::string account_id;
    std::string contract_id;
    std::string product_id;
    Date at;
    EventKind kind = EventKind::Renewal;
    int quantity_delta = 0;
    Cents spend_delta = 0;

    friend bool operator==(const QuantityEvent&, const QuantityEvent&) = default;
};

/// Realized bookings for the measurement harness: first in-horizon renewal
/// (pre period) and the following renewal (post period), plus the quantity
/// positions bracketing the last complete cycle.
struct AccountOutcome {
    std::string account_id;
    Cents pre_bookings = 0;
    Cents post_bookings = 0;
    std::map<std::string, int> baseline_quantities; // pq at the last cycle start
    std::map<std::string, int> final_quantities;    // cq at the last cycle end

    friend bool operator==(const AccountOutcome&, const AccountOutcome&) = default;
};

struct TreatmentEffectConfig {
    double ab_lift = 0.08;            // multiplicative RIG lift for treated accounts of visited reps
    double cem_lift = 0.20;           // multiplicative post-period lift for consistent-MAU converts
    double adoption_rate = 0.85;      // P(rep ever visits the data product) in the A/B window
    double confounding_strength = 1.0; // scales rep skill derived from observable confounders
    double skill_pre_effect = 0.0;    // skill coefficient on pre-period bookings
    double skill_post_effect = 0.05;  // skill coefficient on post-period bookings
    double rig_noise = 0.15;          // s.d. of bookings/target around 1

    friend bool operator==(const TreatmentEffectConfig&, const TreatmentEffectConfig&) = default;
};

struct CycleTruth {
    Date cycle_start;
    double true_spend_delta = 0; // noise-free target, cents scale
    std::map<std::string, double> true_quantity_delta;

    friend bool operator==(const CycleTruth&, const CycleTruth&) = default;
};

struct RepTruth {
    double skill = 0;
    bool ab_visited = true;
    std::vector<int> visit_months; // month offsets from horizon start, ascending

    friend bool operator==(const RepTruth&, const RepTruth&) = default;
};

struct GroundTruth {
    TreatmentEffectConfig effects;
    std::map<std::string, std::vector<CycleTruth>> accounts;
    std::map<std::string, RepTruth> reps;

    friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

/// The single source of truth for the pipeline. Immutable after construction;
/// all downstream modules read it concurrently without coordination.
struct Ledger {
    Date horizon_start;
    Date horizon_end;
    std::vector<Product> products;
    std::vector<Rep> reps;
    std::vector<Account> accounts;
    std::vector<QuantityEvent> events; // sorted by (account_id, at)
    std::vector<AccountOutcome> outcomes;
    std::optional<GroundTruth> ground_truth;

    const Product* find_product(std::string_view id) const;
    const Rep* find_rep(std::string_view id) const;
    const Account* find_account(std::string_view id) const;
    const AccountOutcome* find_outcome(std::string_view account_id) const;

    /// Contiguous slice of this account's events (relies on the sortedness
    /// invariant; binary search, no allocation).
    std::span<const QuantityEvent> account_events(std::string_view account_id) const;

    friend bool operator==(const Ledger&, const Ledger&) = default;
};

/// Checks referential integrity, event ordering, horizon bounds and replay
/// safety (no product quantity ever dips below zero). Throws on violation.
void validate(const Ledger& ledger);

/// Cumulative product position: baseline quantity plus all quantity deltas
/// at or before as_of. Throws LookupError for unknown account or product.
int replay_quantities(const Ledger& ledger, std::string_view account_id,
                      std::string_view product_id, const Date& as_of);

/// JSON-lines ledger file IO. One record per entity with a "type"
/// discriminator; the first line is a provenance record.
Ledger ingest(const std::filesystem::path& path);
void export_jsonl(const Ledger& ledger, const std::filesystem::path& path,
                  const std::string& provenance_json = "{}");

} // namespace bookrank
