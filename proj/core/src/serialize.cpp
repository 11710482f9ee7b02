#include "hahn/serialize.hpp"

namespace hahn {

namespace {

Json opt_group(const std::optional<GroupElement>& g) {
    return g ? to_json(*g) : Json(nullptr);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

} // namespace

Json to_json(const Rat& q) { return to_string(q); }

Json to_json(const GroupElement& g) {
    Json entries = Json::array();
    for (const auto& [i, c] : g.entries()) entries.push_back({i, to_string(c)});
    Json out{{"entries", entries}};
    if (g.shape()->is_extended()) out["k"] = to_string(g.dist_multiple());
    return out;
}

Json to_json(const GroupRingElement& r) {
    Json terms = Json::array();
    for (const auto& [g, c] : r.terms()) terms.push_back({to_json(g), to_string(c)});
    return Json{{"shape", r.shape()->to_sexpr()}, {"terms", terms}};
}

Json to_json(const SeriesElement& s) {
    Json terms = Json::array();
    for (const auto& [g, c] : s.terms()) terms.push_back({to_json(g), to_string(c)});
    return Json{{"shape", s.shape()->to_sexpr()},
                {"terms", terms},
                {"cutoff", opt_group(s.cutoff())}};
}

Json to_json(const LiftResult& r) {
    Json steps = Json::array();
    for (const auto& v : r.step_residuals) steps.push_back(to_json(v));
    return Json{{"root", to_json(r.root)},
                {"residual_valuation", opt_group(r.residual_valuation)},
                {"steps", r.steps},
                {"step_residuals", steps}};
}

Json to_json(const LimitPointWitness& w) {
    return Json{{"limit_point", to_json(w.limit_point)}, {"method", w.method}};
}

Json to_json(const RegularityCounterexample& ce) {
    return Json{{"n", ce.n},
                {"q", ce.q},
                {"level", ce.level},
                {"lo", to_json(ce.lo)},
                {"hi", to_json(ce.hi)},
                {"reason", ce.reason}};
}

Json to_json(const AxiomReport& report) {
    Json samples = Json::array();
    for (const auto& s : report.samples) {
        Json rec{{"a", to_json(s.a)},
                 {"bound", to_json(s.bound)},
                 {"antecedent", verdict_name(s.antecedent)},
                 {"consequent", s.consequent},
                 {"implication", verdict_name(s.implication)}};
        if (s.approximant) rec["approximant"] = to_json(*s.approximant);
        if (s.quotient) rec["quotient"] = to_json(*s.quotient);
        samples.push_back(std::move(rec));
    }
    const char* status = report.known_status == Closedness::Closed ? "closed"
                         : report.known_status == Closedness::NotClosed
                             ? "not-closed"
                             : "unknown";
    return Json{{"shape", report.shape->to_sexpr()},
                {"n", report.n},
                {"samples", samples},
                {"known_status", status},
                {"consistent", report.consistent}};
}

Json to_json(const PrimeCertificate& c) {
    Json supp = Json::array();
    for (const auto& g : c.nonzero_support) supp.push_back(to_json(g));
    return Json{{"element", to_json(c.element)},
                {"nonzero_support", supp},
                {"rank", c.rank}};
}

Json to_json(const EisensteinCertificate& c) {
    Json coeffs = Json::array();
    for (const auto& x : c.poly.coeffs) coeffs.push_back(to_json(x));
    return Json{{"poly", coeffs},
                {"prime", to_json(c.prime_elem)},
                {"prime_certificate", to_json(c.prime_cert)},
                {"divides_non_leading", c.divides_non_leading},
                {"square_free_constant", c.square_free_constant}};
}

Json to_json(const ParameterCertificate& c) {
    return Json{{"group", c.group->to_sexpr()},
                {"n", c.n},
                {"requested_value", to_json(c.requested_value)},
                {"inverted", c.inverted},
                {"eps_value", to_json(c.eps_value)},
                {"epsilon", to_json(c.epsilon)},
                {"witness", to_json(c.witness)},
                {"margin_steps", c.margin_steps}};
}

Json to_json(const PhiCertificate& c) {
    Json out{{"x", to_json(c.x)}, {"verdict", c.verdict}};
    out["v_w"] = opt_group(c.v_w);
    if (c.witness) out["witness"] = to_json(*c.witness);
    if (c.obstruction) {
        out["obstruction"] =
            Json{{"case", c.obstruction->case_tag == 2 ? "case2" : "case3"},
                 {"v_eps", to_json(c.obstruction->v_eps)},
                 {"v_x", to_json(c.obstruction->v_x)},
                 {"v_w", to_json(c.obstruction->v_w)},
                 {"eps_value_divisible", c.obstruction->eps_value_divisible}};
    }
    return out;
}

Json to_json(const OmegaCertificate& c) {
    return Json{{"a", to_json(c.a)},
                {"x", to_json(c.x)},
                {"b", to_json(c.b)},
                {"z", to_json(c.z)},
                {"y", to_json(c.y)},
                {"v_a", to_json(c.v_a)},
                {"v_z", to_json(c.v_z)},
                {"check_cutoff", to_json(c.check_cutoff)}};
}

Json to_json(const OvReport& r) {
    Json out{{"member", r.member},
             {"samples_checked", r.samples_checked},
             {"samples_agreeing", r.samples_agreeing},
             {"seed", r.seed}};
    if (r.failing_u) out["failing_u"] = to_json(*r.failing_u);
    return out;
}

Json to_json(const TowerElement& t) {
    Json coords = Json::array();
    for (const auto& c : t.coords)
        coords.push_back(c ? to_json(*c) : Json("inf"));
    return Json{{"depth", t.config.depth}, {"coords", coords}};
}

Json to_json(const TowerValuation& v) {
    return Json{{"value", opt_group(v.value)},
                {"first_finite_stage", v.first_finite_stage},
                {"in_valuation_ring", v.in_valuation_ring},
                {"in_maximal_ideal", v.in_maximal_ideal}};
}

Json to_json(const RootLiftCertificate& c) {
    Json lifts = Json::array();
    for (const auto& s : c.stage_lifts)
        lifts.push_back(Json{{"stage", s.stage},
                             {"initial_residual", to_json(s.initial_residual)},
                             {"final_residual", opt_group(s.final_residual)},
                             {"steps", s.steps}});
    return Json{{"n", c.n}, {"root", to_json(c.root)}, {"stage_lifts", lifts}};
}

Json to_json(const NonHenselianCertificate& c) {
    Json gbar = Json::array();
    for (const auto& q : c.residue_polynomial.coeffs) gbar.push_back(to_string(q));
    return Json{{"stage", c.stage},
                {"p", c.p},
                {"q", c.q},
                {"prime", to_json(c.prime_elem)},
                {"prime_certificate", to_json(c.prime_cert)},
                {"eisenstein", to_json(c.eisenstein)},
                {"residue_poly", gbar},
                {"simple_root", to_string(c.simple_root)},
                {"lifted_root", to_json(c.lifted_root)},
                {"degree_samples", c.degree_samples}};
}

Json to_json(const ValueGroupReport& r) {
    auto records = [](const std::vector<ValueGroupRecord>& v) {
        Json arr = Json::array();
        for (const auto& rec : v)
            arr.push_back(Json{{"sample", to_json(rec.sample)},
                               {"computed", to_json(rec.computed)},
                               {"ok", rec.ok},
                               {"note", rec.note}});
        return arr;
    };
    return Json{{"level", r.level},
                {"unit_records", records(r.unit_records)},
                {"surjection_records", records(r.surjection_records)},
                {"boundary_flagged", r.boundary_flagged},
                {"seed", r.seed},
                {"all_ok", r.all_ok()}};
}

} // namespace hahn
