#include "bookrank/errors.hpp"
#include "bookrank/ledger.hpp"

#include <json.hpp>

#include <fstream>

namespace bookrank {

namespace {

using Json = nlohmann::ordered_json;

Json metrics_to_json(const MetricsSnapshot& m) {
    return Json{
        {"at", m.at.to_string()},
        {"seats_active_prev", m.seats_active_prev},
        {"seats_active_curr", m.seats_active_curr},
        {"seats_total_prev", m.seats_total_prev},
        {"seats_total_curr", m.seats_total_curr},
        {"messages_sent_prev", m.messages_sent_prev},
        {"messages_sent_curr", m.messages_sent_curr},
        {"messages_accepted_prev", m.messages_accepted_prev},
        {"messages_accepted_curr", m.messages_accepted_curr},
        {"hires_prev", m.hires_prev},
        {"hires_curr", m.hires_curr},
        {"job_views_prev", m.job_views_prev},
        {"job_views_curr", m.job_views_curr},
        {"job_posts_prev", m.job_posts_prev},
        {"job_posts_curr", m.job_posts_curr},
        {"hiring_trend", m.hiring_trend},
        {"attrition_rate", m.attrition_rate},
        {"other_lob_spend", m.other_lob_spend},
        {"online_subs_spend", m.online_subs_spend},
        {"macro_index", m.macro_index},
        {"yoy_bookings_growth", m.yoy_bookings_growth},
    };
}

MetricsSnapshot metrics_from_json(const Json& j) {
    MetricsSnapshot m;
    m.at = Date::parse(j.at("at").get<std::string>());
    m.seats_active_prev = j.at("seats_active_prev").get<double>();
    m.seats_active_curr = j.at("seats_active_curr").get<double>();
    m.seats_total_prev = j.at("seats_total_prev").get<double>();
    m.seats_total_curr = j.at("seats_total_curr").get<double>();
    m.messages_sent_prev = j.at("messages_sent_prev").get<double>();
    m.messages_sent_curr = j.at("messages_sent_curr").get<double>();
    m.messages_accepted_prev = j.at("messages_accepted_prev").get<double>();
    m.messages_accepted_curr = j.at("messages_accepted_curr").get<double>();
    m.hires_prev = j.at("hires_prev").get<double>();
    m.hires_curr = j.at("hires_curr").get<double>();
    m.job_views_prev = j.at("job_views_prev").get<double>();
    m.job_views_curr = j.at("job_views_curr").get<double>();
    m.job_posts_prev = j.at("job_posts_prev").get<double>();
    m.job_posts_curr = j.at("job_posts_curr").get<double>();
    m.hiring_trend = j.at("hiring_trend").get<double>();
    m.attrition_rate = j.at("attrition_rate").get<double>();
    m.other_lob_spend = j.at("other_lob_spend").get<double>();
    m.online_subs_spend = j.at("online_subs_spend").get<double>();
    m.macro_index = j.at("macro_index").get<double>();
    m.yoy_bookings_growth = j.at("yoy_bookings_growth").get<double>();
    return m;
}

Json effects_to_json(const TreatmentEffectConfig& e) {
    return Json{
        {"ab_lift", e.ab_lift},
        {"cem_lift", e.cem_lift},
        {"adoption_rate", e.adoption_rate},
        {"confounding_strength", e.confounding_strength},
        {"skill_pre_effect", e.skill_pre_effect},
        {"skill_post_effect", e.skill_post_effect},
        {"rig_noise", e.rig_noise},
    };
}

TreatmentEffectConfig effects_from_json(const Json& j) {
    TreatmentEffectConfig e;
    e.ab_lift = j.at("ab_lift").get<double>();
    e.cem_lift = j.at("cem_lift").get<double>();
    e.adoption_rate = j.at("adoption_rate").get<double>();
    e.confounding_strength = j.at("confounding_strength").get<double>();
    e.skill_pre_effect = j.at("skill_pre_effect").get<double>();
    e.skill_post_effect = j.at("skill_post_effect").get<double>();
    e.rig_noise = j.at("rig_noise").get<double>();
    return e;
}

template <typename Map>
Json quantities_to_json(const Map& m) {
    Json j = Json::object();
    for (const auto& [pid, qty] : m) j[pid] = qty;
    return j;
}

std::map<std::string, int> quantities_from_json(const Json& j) {
    std::map<std::string, int> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        out[it.key()] = it.value().get<int>();
    }
    return out;
}

} // namespace

void export_jsonl(const Ledger& ledger, const std::filesystem::path& path,
                  const std::string& provenance_json) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open ledger file for writing: " + path.string());
    }

    Json prov;
    try {
        prov = Json::parse(provenance_json);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("bad provenance json: ") + e.what());
    }
    Json header{{"type", "provenance"}};
    for (auto it = prov.begin(); it != prov.end(); ++it) header[it.key()] = it.value();
    Json meta{{"horizon_start", ledger.horizon_start.to_string()},
              {"horizon_end", ledger.horizon_end.to_string()}};
    if (ledger.ground_truth) {
        meta["effects"] = effects_to_json(ledger.ground_truth->effects);
    }
    header["ledger"] = meta;
    out << header.dump() << '\n';

    for (const auto& p : ledger.products) {
        out << Json{{"type", "product"}, {"id", p.id}, {"name", p.name}, {"unit_price", p.unit_price}}.dump()
            << '\n';
    }
    for (const auto& r : ledger.reps) {
        Json j{{"type", "rep"},
               {"id", r.id},
               {"region", to_string(r.region)},
               {"segment", to_string(r.segment)},
               {"tenure_months", r.tenure_months}};
        if (ledger.ground_truth) {
            if (auto it = ledger.ground_truth->reps.find(r.id); it != ledger.ground_truth->reps.end()) {
                j["ground_truth"] = Json{{"skill", it->second.skill},
                                         {"ab_visited", it->second.ab_visited},
                                         {"visit_months", it->second.visit_months}};
            }
        }
        out << j.dump() << '\n';
    }
    for (const auto& a : ledger.accounts) {
        Json j{{"type", "account"},
               {"id", a.id},
               {"rep_id", a.rep_id},
               {"region", to_string(a.region)},
               {"segment", to_string(a.segment)},
               {"size_band", to_string(a.size_band)},
               {"base_spend", a.base_spend},
               {"renewal_anchor", a.renewal_anchor.to_string()},
               {"renewal_target", a.renewal_target},
               {"baseline_quantities", quantities_to_json(a.baseline_quantities)}};
        Json metrics = Json::array();
        for (const auto& m : a.metrics) metrics.push_back(metrics_to_json(m));
        j["metrics"] = metrics;
        if (ledger.ground_truth) {
            if (auto it = ledger.ground_truth->accounts.find(a.id); it != ledger.ground_truth->accounts.end()) {
                Json truths = Json::array();
                for (const auto& t : it->second) {
                    Json tq = Json::object();
                    for (const auto& [pid, v] : t.true_quantity_delta) tq[pid] = v;
                    truths.push_back(Json{{"cycle_start", t.cycle_start.to_string()},
                                          {"true_spend_delta", t.true_spend_delta},
                                          {"true_quantity_delta", tq}});
                }
                j["ground_truth"] = truths;
            }
        }
        out << j.dump() << '\n';
    }
    for (const auto& e : ledger.events) {
        out << Json{{"type", "event"},
                    {"account_id", e.account_id},
                    {"contract_id", e.contract_id},
                    {"product_id", e.product_id},
                    {"at", e.at.to_string()},
                    {"kind", to_string(e.kind)},
                    {"quantity_delta", e.quantity_delta},
                    {"spend_delta", e.spend_delta}}
                   .dump()
            << '\n';
    }
    for (const auto& o : ledger.outcomes) {
        out << Json{{"type", "outcome"},
                    {"account_id", o.account_id},
                    {"pre_bookings", o.pre_bookings},
                    {"post_bookings", o.post_bookings},
                    {"baseline_quantities", quantities_to_json(o.baseline_quantities)},
                    {"final_quantities", quantities_to_json(o.final_quantities)}}
                   .dump()
            << '\n';
    }
}

Ledger ingest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open ledger file: " + path.string());
    }

    Ledger ledger;
    bool has_truth = false;
    GroundTruth truth;

    std::string line;
    size_t line_no = 0;
    std::string current_field = "?";
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            throw ParseError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        try {
            current_field = "type";
            const std::string type = j.at("type").get<std::string>();
            if (type == "provenance") {
                if (j.contains("ledger")) {
                    const Json& meta = j["ledger"];
                    current_field = "ledger.horizon_start";
                    ledger.horizon_start = Date::parse(meta.at("horizon_start").get<std::string>());
                    current_field = "ledger.horizon_end";
                    ledger.horizon_end = Date::parse(meta.at("horizon_end").get<std::string>());
                    if (meta.contains("effects")) {
                        current_field = "ledger.effects";
                        truth.effects = effects_from_json(meta["effects"]);
                        has_truth = true;
                    }
                }
            } else if (type == "product") {
                Product p;
                current_field = "id";
                p.id = j.at("id").get<std::string>();
                current_field = "name";
                p.name = j.at("name").get<std::string>();
                current_field = "unit_price";
                p.unit_price = j.at("unit_price").get<Cents>();
                ledger.products.push_back(std::move(p));
            } else if (type == "rep") {
                Rep r;
                current_field = "id";
                r.id = j.at("id").get<std::string>();
                current_field = "region";
                r.region = region_from_string(j.at("region").get<std::string>());
                current_field = "segment";
                r.segment = segment_from_string(j.at("segment").get<std::string>());
                current_field = "tenure_months";
                r.tenure_months = j.at("tenure_months").get<int>();
                if (j.contains("ground_truth")) {
                    current_field = "ground_truth";
                    const Json& g = j["ground_truth"];
                    RepTruth rt;
                    rt.skill = g.at("skill").get<double>();
                    rt.ab_visited = g.at("ab_visited").get<bool>();
                    rt.visit_months = g.at("visit_months").get<std::vector<int>>();
                    truth.reps[r.id] = std::move(rt);
                    has_truth = true;
                }
                ledger.reps.push_back(std::move(r));
            } else if (type == "account") {
                Account a;
                current_field = "id";
                a.id = j.at("id").get<std::string>();
                current_field = "rep_id";
                a.rep_id = j.at("rep_id").get<std::string>();
                current_field = "region";
                a.region = region_from_string(j.at("region").get<std::string>());
                current_field = "segment";
                a.segment = segment_from_string(j.at("segment").get<std::string>());
                current_field = "size_band";
                a.size_band = size_band_from_string(j.at("size_band").get<std::string>());
                current_field = "base_spend";
                a.base_spend = j.at("base_spend").get<Cents>();
                current_field = "renewal_anchor";
                a.renewal_anchor = Date::parse(j.at("renewal_anchor").get<std::string>());
                current_field = "renewal_target";
                a.renewal_target = j.at("renewal_target").get<Cents>();
                current_field = "baseline_quantities";
                a.baseline_quantities = quantities_from_json(j.at("baseline_quantities"));
                current_field = "metrics";
                for (const auto& m : j.at("metrics")) {
                    a.metrics.push_back(metrics_from_json(m));
                }
                if (j.contains("ground_truth")) {
                    current_field = "ground_truth";
                    std::vector<CycleTruth> truths;
                    for (const auto& t : j["ground_truth"]) {
                        CycleTruth ct;
                        ct.cycle_start = Date::parse(t.at("cycle_start").get<std::string>());
                        ct.true_spend_delta = t.at("true_spend_delta").get<double>();
                        for (auto it = t.at("true_quantity_delta").begin();
                             it != t.at("true_quantity_delta").end(); ++it) {
                            ct.true_quantity_delta[it.key()] = it.value().get<double>();
                        }
                        truths.push_back(std::move(ct));
                    }
                    truth.accounts[a.id] = std::move(truths);
                    has_truth = true;
                }
                ledger.accounts.push_back(std::move(a));
            } else if (type == "event") {
                QuantityEvent e;
                current_field = "account_id";
                e.account_id = j.at("account_id").get<std::string>();
                current_field = "contract_id";
                e.contract_id = j.at("contract_id").get<std::string>();
                current_field = "product_id";
                e.product_id = j.at("product_id").get<std::string>();
                current_field = "at";
                e.at = Date::parse(j.at("at").get<std::string>());
                current_field = "kind";
                e.kind = event_kind_from_string(j.at("kind").get<std::string>());
                current_field = "quantity_delta";
                e.quantity_delta = j.at("quantity_delta").get<int>();
                current_field = "spend_delta";
                e.spend_delta = j.at("spend_delta").get<Cents>();
                ledger.events.push_back(std::move(e));
            } else if (type == "outcome") {
                AccountOutcome o;
                current_field = "account_id";
                o.account_id = j.at("account_id").get<std::string>();
                current_field = "pre_bookings";
                o.pre_bookings = j.at("pre_bookings").get<Cents>();
                current_field = "post_bookings";
                o.post_bookings = j.at("post_bookings").get<Cents>();
                current_field = "baseline_quantities";
                o.baseline_quantities = quantities_from_json(j.at("baseline_quantities"));
                current_field = "final_quantities";
                o.final_quantities = quantities_from_json(j.at("final_quantities"));
                ledger.outcomes.push_back(std::move(o));
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": unknown record type '" + type + "'");
            }
        } catch (const Json::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ", field '" + current_field +
                             "': " + e.what());
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ", field '" + current_field +
                             "': " + e.what());
        }
    }

    if (has_truth) {
        ledger.ground_truth = std::move(truth);
    }
    validate(ledger);
    return ledger;
}

} // namespace bookrank
