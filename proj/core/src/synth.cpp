#include "bookrank/synth.hpp"

#include "bookrank/errors.hpp"
#include "bookrank/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace bookrank {

namespace {

struct ProductSpec {
    const char* name;
    Cents unit_price;
};

constexpr ProductSpec kProductTable[] = {
    {"Recruiter", 899500},        {"Jobs", 239900},
    {"Learning", 35988},          {"Sales Navigator", 119988},
    {"Talent Insights", 450000},  {"Marketing Solutions", 99900},
};

std::string padded_id(char prefix, int width, int n) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%c%0*d", prefix, width, n);
    return buf;
}

double normal(std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

bool bernoulli(std::mt19937_64& rng, double p) {
    std::bernoulli_distribution d(std::clamp(p, 0.0, 1.0));
    return d(rng);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

SizeBand band_for_spend(double dollars) {
    if (dollars < 5'000) return SizeBand::Small;
    if (dollars < 20'000) return SizeBand::Medium;
    if (dollars < 80'000) return SizeBand::Large;
    return SizeBand::XLarge;
}

/// k distinct months sampled from [lo, hi], ascending.
std::vector<int> sample_months(std::mt19937_64& rng, int k, int lo, int hi) {
    std::vector<int> pool(hi - lo + 1);
    std::iota(pool.begin(), pool.end(), lo);
    for (int i = 0; i < k; ++i) {
        const int j = uniform_int(rng, i, static_cast<int>(pool.size()) - 1);
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

void validate_config(const SynthConfig& c) {
    if (c.n_reps < 1) throw ConfigError("n_reps must be >= 1");
    if (c.accounts_per_rep_min < 1 || c.accounts_per_rep_max < c.accounts_per_rep_min) {
        throw ConfigError("accounts_per_rep range invalid");
    }
    if (c.accounts_per_rep_min > 60) throw ConfigError("accounts_per_rep_min exceeds the 60-account cap");
    if (c.n_products < 1) throw ConfigError("n_products must be >= 1");
    if (c.horizon_months < 24) throw ConfigError("horizon_months must be >= 24 (two renewal cycles)");
    for (double p : {c.p_addon, c.p_nct_addon}) {
        if (p < 0 || p > 1) throw ConfigError("event probabilities must lie in [0,1]");
    }
    if (c.label_noise < 0) throw ConfigError("label_noise must be >= 0");
}

} // namespace

double synth_rep_skill(Region region, Segment segment, int tenure_months,
                       double confounding_strength) {
    double t = 0;
    if (tenure_months < kTenureBinEdges[0]) t = -0.75;
    else if (tenure_months < kTenureBinEdges[1]) t = -0.25;
    else if (tenure_months < kTenureBinEdges[2]) t = 0.25;
    else t = 0.75;

    double s = 0;
    switch (segment) {
        case Segment::Smb: s = -0.45; break;
        case Segment::MidMarket: s = 0.0; break;
        case Segment::Enterprise: s = 0.45; break;
    }
    double r = 0;
    switch (region) {
        case Region::Amer: r = 0.30; break;
        case Region::Emea: r = 0.0; break;
        case Region::Apac: r = -0.30; break;
    }
    return confounding_strength * (t + s + r) / 1.5;
}

Ledger generate_synthetic(const SynthConfig& config) {
    validate_config(config);
    const auto& fx = config.effects;

    Ledger ledger;
    ledger.horizon_start = config.horizon_start;
    ledger.horizon_end = config.horizon_start.add_months(config.horizon_months);
    ledger.ground_truth = GroundTruth{};
    ledger.ground_truth->effects = fx;

    for (int k = 0; k < config.n_products; ++k) {
        Product p;
        p.id = padded_id('P', 2, k + 1);
        if (k < static_cast<int>(std::size(kProductTable))) {
            p.name = kProductTable[k].name;
            p.unit_price = kProductTable[k].unit_price;
        } else {
            p.name = "Product " + std::to_string(k + 1);
            p.unit_price = 50'000 + 37'500 * static_cast<Cents>(k);
        }
        ledger.products.push_back(std::move(p));
    }

    const int eff_max_accounts = std::min(config.accounts_per_rep_max, 60);
    int account_counter = 0;

    for (int i = 0; i < config.n_reps; ++i) {
        auto rep_rng = sub_rng(config.seed, "rep", i);
        Rep rep;
        rep.id = padded_id('R', 4, i + 1);
        rep.region = static_cast<Region>(uniform_int(rep_rng, 0, 2));
        rep.segment = static_cast<Segment>(uniform_int(rep_rng, 0, 2));
        rep.tenure_months = uniform_int(rep_rng, 3, 120);

        RepTruth truth;
        truth.skill = synth_rep_skill(rep.region, rep.segment, rep.tenure_months,
                                      fx.confounding_strength);
        truth.ab_visited = bernoulli(rep_rng, fx.adoption_rate);

        // MAU behavior over a 24-month visit log. Year-one class is drawn
        // flat; conversion to consistent usage in year two follows a
        // logistic in skill, which makes the observational fixture
        // genuinely confounded.
        auto visit_rng = sub_rng(config.seed, "visits", i);
        const double u = uniform(visit_rng, 0, 1);
        int y1_months = 0;
        if (u < 0.10) y1_months = uniform_int(visit_rng, 4, 9);        // already consistent
        else if (u < 0.85) y1_months = uniform_int(visit_rng, 1, 3);   // infrequent
        // else non-user
        int y2_months = 0;
        if (y1_months >= 4) {
            y2_months = uniform_int(visit_rng, 4, 9);
        } else if (y1_months >= 1) {
            const double p_convert = sigmoid(-0.7 + 2.2 * truth.skill);
            if (bernoulli(visit_rng, p_convert)) {
                y2_months = uniform_int(visit_rng, 4, 9);
            } else {
                y2_months = bernoulli(visit_rng, 0.07) ? 0 : uniform_int(visit_rng, 1, 3);
            }
        }
        if (y1_months > 0) {
            auto m = sample_months(visit_rng, y1_months, 0, 11);
            truth.visit_months.insert(truth.visit_months.end(), m.begin(), m.end());
        }
        if (y2_months > 0) {
            auto m = sample_months(visit_rng, y2_months, 12, 23);
            truth.visit_months.insert(truth.visit_months.end(), m.begin(), m.end());
        }
        const bool converted = y1_months >= 1 && y1_months <= 3 && y2_months >= 4;

        const int n_accounts = uniform_int(rep_rng, config.accounts_per_rep_min, eff_max_accounts);
        for (int j = 0; j < n_accounts; ++j) {
            const int g = account_counter++;
            auto rng = sub_rng(config.seed, "account", g);

            Account acct;
            acct.id = padded_id('A', 6, g + 1);
            acct.rep_id = rep.id;
            acct.region = rep.region;
            acct.segment = rep.segment;

            const double base_dollars =
                std::clamp(std::exp(9.2 + 1.1 * normal(rng)), 1'000.0, 2'000'000.0);
            acct.base_spend = static_cast<Cents>(std::llround(base_dollars * 100));
            acct.size_band = band_for_spend(base_dollars);
            acct.renewal_anchor = config.horizon_start.add_months(uniform_int(rng, 0, 11))
                                      .add_days(uniform_int(rng, 0, 27));

            // Product holdings entering the horizon; the dominant product
            // soaks up most of the base spend.
            const int primary = uniform_int(rng, 0, config.n_products - 1);
            for (int k = 0; k < config.n_products; ++k) {
                const auto& prod = ledger.products[k];
                const double share = (k == primary) ? 0.6 : (bernoulli(rng, 0.5) ? 0.2 : 0.0);
                if (share == 0.0) continue;
                const int qty = std::max(
                    k == primary ? 1 : 0,
                    static_cast<int>(std::llround(base_dollars * share * 100 / prod.unit_price)));
                if (qty > 0) acct.baseline_quantities[prod.id] = qty;
            }
            std::map<std::string, int> holdings = acct.baseline_quantities;

            // Metric state persists across cycles: the current year of one
            // cycle is the previous year of the next.
            double seats_total = std::clamp(std::exp(2.5 + 0.8 * normal(rng)), 2.0, 500.0);
            double util = std::clamp(0.55 + 0.12 * normal(rng), 0.05, 0.95);
            double sent = std::exp(4.5 + 0.7 * normal(rng));
            double acc_rate = std::clamp(0.25 + 0.08 * normal(rng), 0.02, 0.9);
            double hires = std::exp(2.2 + 0.6 * normal(rng));
            const bool has_posts = !bernoulli(rng, 0.05); // a few accounts never post jobs
            double posts = has_posts ? std::exp(2.0 + 0.8 * normal(rng)) : 0.0;
            double viewers_per_job = std::exp(3.6 + 0.5 * normal(rng));
            double views = has_posts ? viewers_per_job * posts : std::exp(5.0 + normal(rng));

            const double spend_scale = std::max(20'000.0, 0.06 * acct.base_spend);
            double spend_level = static_cast<double>(acct.base_spend);
            std::vector<QuantityEvent> acct_events;
            std::vector<CycleTruth> acct_truth;

            auto pick_product = [&]() {
                double total_w = 0;
                for (const auto& p : ledger.products) {
                    auto it = holdings.find(p.id);
                    total_w += 1.0 + (it == holdings.end() ? 0 : it->second);
                }
                double pickpoint = uniform(rng, 0, total_w);
                for (const auto& p : ledger.products) {
                    auto it = holdings.find(p.id);
                    pickpoint -= 1.0 + (it == holdings.end() ? 0 : it->second);
                    if (pickpoint <= 0) return &p;
                }
                return &ledger.products.back();
            };

            // Emits one event; returns its booked spend (0 if skipped).
            // exact_units keeps spend == units * price for purchase events;
            // renewals may reprice, so their spend stands as computed.
            auto emit = [&](Date at, EventKind kind, const std::string& contract,
                            double spend_cents, bool exact_units,
                            const Product* forced = nullptr) {
                if (at > ledger.horizon_end) return 0.0;
                const Product* chosen = forced ? forced : pick_product();
                int qty = static_cast<int>(std::llround(spend_cents / chosen->unit_price));
                int& held = holdings[chosen->id];
                if (qty < -held) qty = -held; // never drop below zero units
                if (qty == 0 && kind != EventKind::Renewal && kind != EventKind::NonCoTermRenewal) {
                    return 0.0; // add-on that rounds to nothing is not an event
                }
                Cents spend = exact_units ? static_cast<Cents>(qty) * chosen->unit_price
                                          : static_cast<Cents>(std::llround(spend_cents));
                held += qty;
                acct_events.push_back(QuantityEvent{acct.id, contract, chosen->id, at, kind,
                                                    qty, spend});
                spend_level += static_cast<double>(spend);
                return static_cast<double>(spend);
            };

            int cycle = 0;
            int nct_chains = 0;
            for (Date cycle_start = acct.renewal_anchor; cycle_start < ledger.horizon_end;
                 cycle_start = cycle_start.add_months(12), ++cycle) {
                auto crng = sub_rng(config.seed, "cycle", static_cast<std::uint64_t>(g) * 16 + cycle);

                const double z_usage = normal(crng);
                const double z_roi = normal(crng);
                const double z_hiring = normal(crng);
                const double z_macro = normal(crng);

                MetricsSnapshot m;
                m.at = cycle_start;
                m.seats_total_prev = std::round(seats_total);
                m.seats_active_prev = std::round(util * seats_total);
                m.messages_sent_prev = std::round(sent);
                m.messages_accepted_prev = std::round(acc_rate * sent);
                m.hires_prev = std::round(hires);
                m.job_posts_prev = std::round(posts);
                m.job_views_prev = std::round(views);

                const double util_next = std::clamp(util + 0.10 * z_usage + 0.02 * normal(crng), 0.05, 0.98);
                const double seats_next = std::max(2.0, seats_total * (1 + 0.05 * normal(crng)));
                const double sent_next = std::max(0.0, sent * (1 + 0.15 * z_usage + 0.05 * normal(crng)));
                const double rate_next = std::clamp(acc_rate + 0.06 * z_roi + 0.01 * normal(crng), 0.02, 0.95);
                const double hires_next = std::max(0.0, hires * (1 + 0.30 * z_roi) + 0.5 * normal(crng));
                const double views_next = std::max(0.0, views * (1 + 0.20 * z_hiring + 0.05 * normal(crng)));

                m.seats_total_curr = std::round(seats_next);
                m.seats_active_curr = std::round(util_next * seats_next);
                m.messages_sent_curr = std::round(sent_next);
                m.messages_accepted_curr = std::round(rate_next * sent_next);
                m.hires_curr = std::round(hires_next);
                m.job_posts_curr = std::round(posts);
                m.job_views_curr = std::round(views_next);
                m.hiring_trend = z_hiring + 0.1 * normal(crng);
                m.attrition_rate = std::clamp(0.12 + 0.05 * normal(crng), 0.0, 0.6);
                m.other_lob_spend = std::max(0.0, 0.1 * acct.base_spend / 100.0 * (1 + 0.8 * normal(crng)));
                m.online_subs_spend = std::max(0.0, std::exp(5.0 + normal(crng)));
                double region_macro = rep.region == Region::Amer ? 0.3 : (rep.region == Region::Emea ? 0.0 : -0.2);
                m.macro_index = region_macro + 0.5 * z_macro;
                m.yoy_bookings_growth =
                    std::clamp(normal(crng) / std::max(std::abs(normal(crng)), 0.2), -30.0, 30.0);
                acct.metrics.push_back(m);

                util = util_next;
                seats_total = seats_next;
                sent = sent_next;
                acc_rate = rate_next;
                hires = hires_next;
                views = views_next;

                const double signal = 0.9 * z_usage + 0.8 * z_roi + 0.5 * z_hiring + 0.35 * z_macro +
                                      0.45 * z_usage * z_roi;
                const double signal_sd = 1.41; // s.d. of the combination above
                const double realized =
                    spend_scale * (signal + config.label_noise * signal_sd * normal(crng));

                CycleTruth ct;
                ct.cycle_start = cycle_start;
                ct.true_spend_delta = spend_scale * signal;
                {
                    double total_val = 0;
                    for (const auto& [pid, q] : acct.baseline_quantities) {
                        total_val += static_cast<double>(q) * ledger.find_product(pid)->unit_price;
                    }
                    for (const auto& [pid, q] : acct.baseline_quantities) {
                        const double share = total_val > 0
                                                 ? q * static_cast<double>(ledger.find_product(pid)->unit_price) / total_val
                                                 : 1.0;
                        ct.true_quantity_delta[pid] =
                            ct.true_spend_delta * share / ledger.find_product(pid)->unit_price;
                    }
                }
                acct_truth.push_back(std::move(ct));

                // Decompose the cycle delta into the Fig-3 event shapes.
                const bool has_addon = bernoulli(crng, config.p_addon);
                const bool has_nct = bernoulli(crng, config.p_nct_addon);
                const double addon_spend = has_addon ? std::abs(normal(crng)) * 0.35 * spend_scale : 0.0;
                const double nct_spend = has_nct ? std::abs(normal(crng)) * 0.25 * spend_scale : 0.0;
                const double nct_renew_spend =
                    has_nct && bernoulli(crng, 0.5) ? std::abs(normal(crng)) * 0.15 * spend_scale : 0.0;

                double renewal_spend = realized - addon_spend - nct_spend - nct_renew_spend;

                // Measurement-side adjustments ride on the opening renewal:
                // cycle 0 is the pre-period booking, cycle 1 the post-period
                // booking that carries skill and consistent-MAU effects.
                if (cycle == 0) {
                    renewal_spend += fx.skill_pre_effect * truth.skill * spend_level;
                } else if (cycle == 1) {
                    const double counterfactual = spend_level + renewal_spend;
                    double lift = fx.skill_post_effect * truth.skill;
                    if (converted) lift += fx.cem_lift;
                    renewal_spend += lift * counterfactual;
                }
                renewal_spend = std::max(renewal_spend, -0.8 * spend_level); // churn floor

                // A large renewal sometimes nets across two contracts in
                // opposite directions (the Customer-1 shape).
                const std::string main_contract = "C-" + acct.id + "-1";
                if (bernoulli(crng, 0.3) && std::abs(renewal_spend) > 0.2 * spend_scale) {
                    const double counter = std::abs(normal(crng)) * 0.2 * spend_scale;
                    emit(cycle_start, EventKind::Renewal, main_contract, renewal_spend + counter, false);
                    emit(cycle_start, EventKind::Renewal, "C-" + acct.id + "-2", -counter, false);
                } else {
                    emit(cycle_start, EventKind::Renewal, main_contract, renewal_spend, false);
                }

                if (has_addon) {
                    const Date at = cycle_start.add_months(uniform_int(crng, 2, 9))
                                        .add_days(uniform_int(crng, 0, 20));
                    emit(at, EventKind::AddOn, main_contract, addon_spend, true);
                }
                if (has_nct) {
                    const std::string chain = "C-" + acct.id + "-nct" + std::to_string(++nct_chains);
                    const Date at = cycle_start.add_months(uniform_int(crng, 3, 10))
                                        .add_days(uniform_int(crng, 0, 20));
                    const Product* chain_product = pick_product();
                    const double booked =
                        emit(at, EventKind::AddOnNonCoTerm, chain, nct_spend, true, chain_product);
                    if (booked != 0.0) {
                        // The side contract renews on its own anniversary,
                        // on the same product it opened with.
                        emit(at.add_months(12), EventKind::NonCoTermRenewal, chain, nct_renew_spend,
                             true, chain_product);
                    }
                }
            }

            // Outcomes: bookings levels right after the pre and post renewals.
            std::sort(acct_events.begin(), acct_events.end(),
                      [](const QuantityEvent& a, const QuantityEvent& b) {
                          if (a.at != b.at) return a.at < b.at;
                          return a.contract_id < b.contract_id;
                      });
            const Date pre_renewal = acct.renewal_anchor;
            const Date post_renewal = acct.renewal_anchor.add_months(12);
            Cents pre_bookings = acct.base_spend;
            Cents post_bookings = acct.base_spend;
            for (const auto& e : acct_events) {
                if (e.at <= pre_renewal) pre_bookings += e.spend_delta;
                if (e.at <= post_renewal) post_bookings += e.spend_delta;
            }

            const double target_noise = 1.0 + fx.rig_noise * normal(rng);
            acct.renewal_target = std::max<Cents>(
                10'000, static_cast<Cents>(std::llround(pre_bookings / std::max(0.2, target_noise))));

            AccountOutcome outcome;
            outcome.account_id = acct.id;
            outcome.pre_bookings = pre_bookings;
            outcome.post_bookings = post_bookings;
            // pq: units entering the last cycle (before its opening renewal);
            // cq: units after every event.
            {
                std::map<std::string, int> at_post = acct.baseline_quantities;
                std::map<std::string, int> final_q = acct.baseline_quantities;
                for (const auto& e : acct_events) {
                    if (e.at < post_renewal) at_post[e.product_id] += e.quantity_delta;
                    final_q[e.product_id] += e.quantity_delta;
                }
                outcome.baseline_quantities = std::move(at_post);
                outcome.final_quantities = std::move(final_q);
            }

            ledger.ground_truth->accounts[acct.id] = std::move(acct_truth);
            ledger.events.insert(ledger.events.end(), acct_events.begin(), acct_events.end());
            ledger.accounts.push_back(std::move(acct));
            ledger.outcomes.push_back(std::move(outcome));
        }

        ledger.ground_truth->reps[rep.id] = std::move(truth);
        ledger.reps.push_back(std::move(rep));
    }

    validate(ledger);
    return ledger;
}

} // namespace bookrank
