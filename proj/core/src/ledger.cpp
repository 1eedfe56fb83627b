#include "bookrank/ledger.hpp"

#include "bookrank/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bookrank {

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
    for (const auto& item : items) {
        if (item.id == id) return &item;
    }
    return nullptr;
}

} // namespace

std::string_view to_string(Region r) {
    switch (r) {
        case Region::Amer: return "AMER";
        case Region::Emea: return "EMEA";
        case Region::Apac: return "APAC";
    }
    throw ValidationError("bad Region value");
}

std::string_view to_string(Segment s) {
    switch (s) {
        case Segment::Smb: return "SMB";
        case Segment::MidMarket: return "MM";
        case Segment::Enterprise: return "ENT";
    }
    throw ValidationError("bad Segment value");
}

std::string_view to_string(SizeBand b) {
    switch (b) {
        case SizeBand::Small: return "S";
        case SizeBand::Medium: return "M";
        case SizeBand::Large: return "L";
        case SizeBand::XLarge: return "XL";
    }
    throw ValidationError("bad SizeBand value");
}

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::Renewal: return "renewal";
        case EventKind::AddOn: return "add_on";
        case EventKind::AddOnNonCoTerm: return "add_on_non_co_term";
        case EventKind::NonCoTermRenewal: return "non_co_term_renewal";
    }
    throw ValidationError("bad EventKind value");
}

Region region_from_string(std::string_view s) {
    if (s == "AMER") return Region::Amer;
    if (s == "EMEA") return Region::Emea;
    if (s == "APAC") return Region::Apac;
    throw ParseError("unknown region: '" + std::string(s) + "'");
}

Segment segment_from_string(std::string_view s) {
    if (s == "SMB") return Segment::Smb;
    if (s == "MM") return Segment::MidMarket;
    if (s == "ENT") return Segment::Enterprise;
    throw ParseError("unknown segment: '" + std::string(s) + "'");
}

SizeBand size_band_from_string(std::string_view s) {
    if (s == "S") return SizeBand::Small;
    if (s == "M") return SizeBand::Medium;
    if (s == "L") return SizeBand::Large;
    if (s == "XL") return SizeBand::XLarge;
    throw ParseError("unknown size band: '" + std::string(s) + "'");
}

EventKind event_kind_from_string(std::string_view s) {
    if (s == "renewal") return EventKind::Renewal;
    if (s == "add_on") return EventKind::AddOn;
    if (s == "add_on_non_co_term") return EventKind::AddOnNonCoTerm;
    if (s == "non_co_term_renewal") return EventKind::NonCoTermRenewal;
    throw ParseError("unknown event kind: '" + std::string(s) + "'");
}

const Product* Ledger::find_product(std::string_view id) const {
    return find_by_id(products, id);
}

const Rep* Ledger::find_rep(std::string_view id) const {
    return find_by_id(reps, id);
}

const Account* Ledger::find_account(std::string_view id) const {
    return find_by_id(accounts, id);
}

const AccountOutcome* Ledger::find_outcome(std::string_view account_id) const {
    for (const auto& o : outcomes) {
        if (o.account_id == account_id) return &o;
    }
    return nullptr;
}

std::span<const QuantityEvent> Ledger::account_events(std::string_view account_id) const {
    const auto lo = std::lower_bound(events.begin(), events.end(), account_id,
                                     [](const QuantityEvent& e, std::string_view id) {
                                         return e.account_id < id;
                                     });
    const auto hi = std::upper_bound(lo, events.end(), account_id,
                                     [](std::string_view id, const QuantityEvent& e) {
                                         return id < e.account_id;
                                     });
    return {events.data() + (lo - events.begin()), static_cast<size_t>(hi - lo)};
}

void validate(const Ledger& ledger) {
    std::set<std::string> product_ids, rep_ids, account_ids;
    for (const auto& p : ledger.products) {
        if (!product_ids.insert(p.id).second) {
            throw IntegrityError("duplicate product id: " + p.id);
        }
        if (p.unit_price < 0) {
            throw ValidationError("product " + p.id + ": unit_price must be >= 0");
        }
    }
    for (const auto& r : ledger.reps) {
        if (!rep_ids.insert(r.id).second) {
            throw IntegrityError("duplicate rep id: " + r.id);
        }
        if (r.tenure_months < 0) {
            throw ValidationError("rep " + r.id + ": tenure_months must be >= 0");
        }
    }
    for (const auto& a : ledger.accounts) {
        if (!account_ids.insert(a.id).second) {
            throw IntegrityError("duplicate account id: " + a.id);
        }
        if (!rep_ids.count(a.rep_id)) {
            throw IntegrityError("account " + a.id + ": unknown rep " + a.rep_id);
        }
        if (a.base_spend <= 0) {
            throw ValidationError("account " + a.id + ": base_spend must be > 0");
        }
        if (a.renewal_target <= 0) {
            throw ValidationError("account " + a.id + ": renewal_target must be > 0");
        }
        for (const auto& [pid, qty] : a.baseline_quantities) {
            if (!product_ids.count(pid)) {
                throw IntegrityError("account " + a.id + ": unknown product " + pid);
            }
            if (qty < 0) {
                throw ValidationError("account " + a.id + ": negative baseline quantity for " + pid);
            }
        }
    }

    const bool horizon_set = ledger.horizon_start < ledger.horizon_end;
    const QuantityEvent* prev = nullptr;
    for (const auto& e : ledger.events) {
        if (!account_ids.count(e.account_id)) {
            throw IntegrityError("event at " + e.at.to_string() + ": unknown account " + e.account_id);
        }
        if (!product_ids.count(e.product_id)) {
            throw IntegrityError("event at " + e.at.to_string() + ": unknown product " + e.product_id);
        }
        if (horizon_set && (e.at < ledger.horizon_start || e.at > ledger.horizon_end)) {
            throw ValidationError("event at " + e.at.to_string() + " outside simulation horizon");
        }
        if (prev && prev->account_id == e.account_id && e.at < prev->at) {
            throw IntegrityError("events not sorted by (account, date) near account " + e.account_id);
        }
        if (prev && e.account_id < prev->account_id) {
            throw IntegrityError("events not sorted by (account, date) near account " + e.account_id);
        }
        prev = &e;
    }

    for (const auto& o : ledger.outcomes) {
        if (!account_ids.count(o.account_id)) {
            throw IntegrityError("outcome references unknown account " + o.account_id);
        }
    }

    // Replay safety: running quantity per (account, product) never dips below zero.
    std::map<std::pair<std::string, std::string>, long long> qty;
    for (const auto& a : ledger.accounts) {
        for (const auto& [pid, q] : a.baseline_quantities) {
            qty[{a.id, pid}] = q;
        }
    }
    for (const auto& e : ledger.events) {
        auto& q = qty[{e.account_id, e.product_id}];
        q += e.quantity_delta;
        if (q < 0) {
            throw IntegrityError("account " + e.account_id + ", product " + e.product_id +
                                 ": quantity drops below zero at " + e.at.to_string());
        }
    }
}

int replay_quantities(const Ledger& ledger, std::string_view account_id,
                      std::string_view product_id, const Date& as_of) {
    const Account* account = ledger.find_account(account_id);
    if (!account) {
        throw LookupError("unknown account: " + std::string(account_id));
    }
    if (!ledger.find_product(product_id)) {
        throw LookupError("unknown product: " + std::string(product_id));
    }
    long long qty = 0;
    if (auto it = account->baseline_quantities.find(std::string(product_id));
        it != account->baseline_quantities.end()) {
        qty = it->second;
    }
    for (const auto& e : ledger.account_events(account_id)) {
        if (e.product_id == product_id && e.at <= as_of) {
            qty += e.quantity_delta;
        }
    }
    return static_cast<int>(qty);
}

} // namespace bookrank
