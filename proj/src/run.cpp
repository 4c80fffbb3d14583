#include "twist/run.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "twist/incidence.hpp"

namespace tw {

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

long binom3(int n) { return long(n + 3) * (n + 2) * (n + 1) / 6; }

AuditReport scalar_fp_audit(const Specialization& sp, uint64_t seed) {
    AuditReport rep{"field_axioms", {}};
    const auto& F = sp.field;
    const auto& P = sp.par;
    std::mt19937_64 rng(seed);
    bool assoc = true, dist = true, inv = true;
    for (int k = 0; k < 1000; ++k) {
        Fp2 x = F.random(rng), y = F.random(rng), z = F.random(rng);
        assoc = assoc && (x * y) * z == x * (y * z) && (x + y) + z == x + (y + z);
        dist = dist && x * (y + z) == x * y + x * z;
        inv = inv && x + (-x) == F.zero() && (x.is_zero() || x * x.inv() == F.one());
    }
    rep.add("associativity_on_random_triples", assoc, {{"samples", 1000}});
    rep.add("distributivity_on_random_triples", dist);
    rep.add("inverses_on_random_samples", inv);
    rep.add("constraint_vanishes", constraint_value(P).is_zero());
    bool roots = P.i * P.i == -F.one() && P.a * P.a == P.alpha && P.b * P.b == P.beta && P.c * P.c == P.gamma;
    rep.add("square_roots", roots);
    bool excl = true;
    for (auto* v : {&P.alpha, &P.beta, &P.gamma}) excl = excl && !v->is_zero() && *v != F.one() && *v != -F.one();
    rep.add("parameters_avoid_zero_and_plus_minus_one", excl && !(F.one() + P.alpha * P.beta).is_zero());
    rep.add("split_roots_in_prime_field", P.a.in_base() && P.b.in_base() && P.c.in_base() && P.i.in_base());
    return rep;
}

AuditReport scalar_tower_audit(uint64_t seed) {
    AuditReport rep{"tower_arithmetic", {}};
    rep.add("c_squared_rewritten", tower_reduce("c*c") == tower_reduce("-(a^2+b^2)/(1+a^2*b^2)"));
    rep.add("i_squared_is_minus_one", tower_reduce("i*i") == Tower(-1));
    rep.add("difference_of_squares", tower_reduce("(a+c)*(a-c)") == tower_reduce("a^2 + (a^2+b^2)/(1+a^2 b^2)"));
    rep.add("constraint_vanishes", tower_reduce("alpha+beta+gamma+alpha*beta*gamma").is_zero());
    std::mt19937_64 rng(seed);
    TowerField T;
    bool idem = true, hom = true, field = true;
    for (int k = 0; k < 100; ++k) {
        Tower x = T.random(rng), y = T.random(rng);
        Tower r = tower_reduce(x.str());
        idem = idem && r == x && tower_reduce(r.str()) == r;
        hom = hom && tower_reduce("(" + x.str() + ")*(" + y.str() + ")") == x * y &&
              tower_reduce("(" + x.str() + ")+(" + y.str() + ")") == x + y;
    }
    for (int k = 0; k < 20; ++k) {
        Tower x = T.random(rng), y = T.random(rng), z = T.random(rng);
        field = field && (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z;
        field = field && (x.is_zero() || x * x.inv() == Tower(1));
    }
    rep.add("reduce_is_idempotent_on_serialized_samples", idem, {{"samples", 100}});
    rep.add("reduce_is_a_ring_homomorphism_on_random_pairs", hom, {{"samples", 100}});
    rep.add("field_axioms_on_random_triples", field, {{"samples", 20}});
    return rep;
}

template <class E>
AuditReport hilbert_audit(const Presentation<E>& S, const Presentation<E>& A, int cutoff, int oracle) {
    AuditReport rep{"hilbert_functions", {}};
    for (const auto* pres : {&S, &A}) {
        GradedAlgebra<E> G(*pres, cutoff);
        Json dims = Json::array();
        bool ok = true;
        for (int n = 0; n <= cutoff; ++n) {
            dims.push_back(G.dim(n));
            ok = ok && long(G.dim(n)) == binom3(n);
        }
        rep.add(pres->name + ".dims_equal_binomial_up_to_" + std::to_string(cutoff), ok, {{"dims", dims}});
        if (oracle >= 0) {
            bool t = true;
            for (int n = 0; n <= oracle; ++n) t = t && long(tensor_quotient_dim(*pres, n)) == binom3(n);
            rep.add(pres->name + ".tensor_quotient_oracle_up_to_" + std::to_string(oracle), t);
        }
    }
    return rep;
}

Json params_json(const Specialization& sp) {
    const auto& P = sp.par;
    return {{"p", sp.p},     {"seed", sp.seed}, {"i", P.i.str()},         {"a", P.a.str()},
            {"b", P.b.str()}, {"c", P.c.str()}, {"alpha", P.alpha.str()}, {"beta", P.beta.str()},
            {"gamma", P.gamma.str()}};
}

AuditReport exception_report(const std::exception& e) {
    AuditReport rep{"aborted", {}};
    rep.add("suite_completed", false, {{"error", e.what()}});
    return rep;
}

struct PrimeRun {
    std::vector<SuiteResult> suites;
    Json signature = Json::object();
    Json extra = Json::object();
};

PrimeRun run_prime(const RunConfig& c, uint32_t p, const std::function<void(const std::string&)>& log) {
    PrimeRun out;
    const int mc = std::min(c.cutoff, 6);
    IncidenceContext X(p, c.seed, mc, c.jobs);
    GradedAlgebra<Fp2> GS(X.S, mc);
    const std::string field = "p=" + std::to_string(p);
    out.extra["parameters"] = params_json(X.sp);
    auto done = [&](const std::string& s) {
        if (log) log(field + " " + s);
    };
    auto want = [&](const char* s) { return has(c.suites, s); };
    std::optional<PointIncidence> I;
    std::vector<FatSample> F;
    auto incidence = [&] {
        if (!I) {
            I = point_incidence(X);
            F = fat_samples(X, 4);
        }
    };
    if (want("identities")) {
        SuiteResult r{"identities", field, {}};
        try {
            r.audits.push_back(scalar_fp_audit(X.sp, c.seed));
            r.audits.push_back(hilbert_audit(X.S, X.A, c.cutoff, 4));
            r.audits.push_back(central_elements_audit(GS, X.GA));
            r.audits.push_back(central_pencil_audit(GS));
            r.audits.push_back(h4_group_audit(X.S, X.A));
            r.audits.push_back(gamma_invariant_audit(GS, X.GA, 3));
            r.audits.push_back(egeom_identity_audit(X.sp.par, X.zero, X.one));
            r.audits.push_back(group_law_audit(X.C, c.seed));
            r.audits.push_back(quadric_labels_audit(X.C, c.seed));
        } catch (const std::exception& e) {
            r.audits.push_back(exception_report(e));
        }
        out.suites.push_back(std::move(r));
        done("identities");
    }
    if (want("schemes")) {
        SuiteResult r{"schemes", field, {}};
        try {
            auto base = point_scheme(X.A, X.sp.field, false, c.seed);
            auto ext = point_scheme(X.A, X.sp.field, true, c.seed);
            r.audits.push_back(point_scheme_audit_A(base, ext, X.sp.par));
            auto ps = point_scheme(X.S, X.sp.field, false, c.seed);
            r.audits.push_back(point_scheme_audit_S(ps, X.C));
            r.audits.push_back(point_table_audit(X.A));
            r.audits.push_back(commuting_conic_audit(X.GA, GS));
            r.audits.push_back(conic_transport_audit(X.A));
            const auto& R = X.lines();
            r.audits.push_back(line_scheme_audit(R, X.specs, X.sp.par, X.sp.field));
            r.audits.push_back(elliptic_component_audit(X.C, X.T, X.specs));
            r.audits.push_back(component_degree_audit(X.specs));
            auto Q = quartics_in_plucker(X.T, X.sp.field, c.seed);
            auto qa = quartic_audit(Q, R, X.T, X.sp.par, X.sp.field, c.seed);
            auto dd = quartic_certificate(Q);
            qa.add("quartics_and_plucker_relation_have_dim_1_degree_20", !dd.empty && dd.dim == 1 && dd.degree == 20,
                   {{"dim", dd.dim}, {"degree", dd.degree}});
            r.audits.push_back(std::move(qa));
            out.signature["quartic_certificate"] = {dd.dim, dd.degree};
            r.audits.push_back(intersection_table_identities(X.sp.par, X.zero, X.one));
            out.signature["point_scheme_A"] = {base.points.size(), ext.points.size(), ext.degenerate.size()};
            out.signature["line_scheme"] = {{"unmatched", R.unmatched.size()}, {"multi", R.multi.size()},
                                            {"low_rank", R.low_rank}};
        } catch (const std::exception& e) {
            r.audits.push_back(exception_report(e));
        }
        out.suites.push_back(std::move(r));
        done("schemes");
    }
    if (want("modules")) {
        SuiteResult r{"modules", field, {}};
        try {
            r.audits.push_back(simple2_audit(GS));
            r.audits.push_back(simple2_line_audit(GS, X.C, mc, c.seed));
            r.audits.push_back(point_module_audit(X.GA, mc));
            r.audits.push_back(fat_form_identities(X.sp.par, X.zero, X.one));
            r.audits.push_back(fat_point_audit(X.GA, X.C, mc, c.seed));
        } catch (const std::exception& e) {
            r.audits.push_back(exception_report(e));
        }
        out.suites.push_back(std::move(r));
        done("modules");
    }
    if (want("incidence")) {
        SuiteResult r{"incidence", field, {}};
        try {
            incidence();
            r.audits.push_back(conic_point_incidence(X, *I));
            r.audits.push_back(elliptic_point_incidence(X, *I));
            r.audits.push_back(fat_incidence(X, F));
            r.audits.push_back(intersection_table_audit(X));
            r.audits.push_back(quadric_audit(X, *I));
            r.audits.push_back(gamma_invariance_audit(X, *I));
            r.audits.push_back(hom_membership_audit(X));
            Json counts = Json::array();
            for (int idx = 0; idx < 20; ++idx) counts.push_back(I->counts[idx]);
            out.signature["incidence_counts"] = counts;
            out.extra["incidence"] = incidence_json(X, *I, F);
            out.extra["incidence_markdown"] = incidence_markdown(X, *I, F);
        } catch (const std::exception& e) {
            r.audits.push_back(exception_report(e));
        }
        out.suites.push_back(std::move(r));
        done("incidence");
    }
    if (want("sequences")) {
        SuiteResult r{"sequences", field, {}};
        try {
            incidence();
            auto rep = exact_sequence_audit(X, *I, F);
            Json pairs = Json::object();
            for (auto& it : rep.items)
                if (it.detail.contains("pairs")) pairs[it.name] = it.detail["pairs"];
            out.signature["sequence_pairs"] = pairs;
            r.audits.push_back(std::move(rep));
        } catch (const std::exception& e) {
            r.audits.push_back(exception_report(e));
        }
        out.suites.push_back(std::move(r));
        done("sequences");
    }
    if (c.dump_modules) {
        Json m = Json::object();
        m["point_P0_0"] = point_module(X.LA, X.point(4), 3).json(true);
        const auto& hits = X.lines().hits;
        for (auto& h : hits)
            if (h.tags.size() == 1) {
                m["line_" + std::string(kComponentNames[h.tags[0]])] =
                    cyclic_quotient(X.GA, std::vector<Pt<Fp2>>{h.rows[0], h.rows[1]}, 3).json(true);
                break;
            }
        m["fat_tau_prime"] = fat_point_module(X.LS, X.sp.par, X.C.tau_prime(), 3).json(true);
        out.extra["modules"] = m;
    }
    return out;
}

std::vector<SuiteResult> run_symbolic(const RunConfig& c, const std::function<void(const std::string&)>& log) {
    std::vector<SuiteResult> out;
    auto P = symbolic_params();
    TowerField T;
    const Tower z = T.zero(), o = T.one();
    auto S = presentation_S(P, z, o), A = presentation_A(P, z, o);
    GradedAlgebra<Tower> GS(S, 3), GA(A, 3);
    if (has(c.suites, "identities")) {
        SuiteResult r{"identities", "symbolic", {}};
        r.audits.push_back(scalar_tower_audit(c.seed));
        r.audits.push_back(hilbert_audit(S, A, std::min(c.cutoff, 4), -1));
        r.audits.push_back(central_elements_audit(GS, GA));
        r.audits.push_back(central_pencil_audit(GS));
        r.audits.push_back(h4_group_audit(S, A));
        r.audits.push_back(gamma_invariant_audit(GS, GA, 2));
        r.audits.push_back(egeom_identity_audit(P, z, o));
        r.audits.push_back(point_table_audit(A));
        r.audits.push_back(conic_transport_audit(A));
        r.audits.push_back(commuting_conic_audit(GA, GS));
        r.audits.push_back(intersection_table_identities(P, z, o));
        r.audits.push_back(quadric_ruling_identities(P, z, o));
        out.push_back(std::move(r));
        if (log) log("symbolic identities");
    }
    if (has(c.suites, "modules")) {
        SuiteResult r{"modules", "symbolic", {}};
        r.audits.push_back(simple2_audit(GS));
        r.audits.push_back(point_module_audit(GA, 3));
        r.audits.push_back(fat_form_identities(P, z, o));
        out.push_back(std::move(r));
        if (log) log("symbolic modules");
    }
    return out;
}

} // namespace

RunConfig validate(RunConfig c) {
    if (c.mode != "full" && c.mode != "symbolic" && c.mode != "specialized")
        throw ConfigError("mode must be full, symbolic or specialized");
    if (c.suites.empty()) throw ConfigError("no suite requested");
    std::vector<std::string> s;
    for (auto& x : c.suites) {
        if (x == "all") {
            for (auto n : kSuiteNames) s.push_back(n);
            continue;
        }
        if (std::find(std::begin(kSuiteNames), std::end(kSuiteNames), x) == std::end(kSuiteNames))
            throw ConfigError("unknown suite " + x);
        s.push_back(x);
    }
    bool all = has(c.suites, "all");
    if (c.mode == "symbolic") {
        std::vector<std::string> keep;
        for (auto& x : s) {
            bool enumer = x == "schemes" || x == "incidence" || x == "sequences";
            if (enumer && !all) throw ConfigError("symbolic mode forbids the enumeration suite " + x);
            if (!enumer) keep.push_back(x);
        }
        s = keep;
    } else if (c.primes.empty())
        throw ConfigError(c.mode + " mode needs at least one prime");
    std::vector<std::string> ordered;
    for (auto n : {"identities", "schemes", "modules", "incidence", "sequences"})
        if (has(s, n)) ordered.push_back(n);
    c.suites = ordered;
    for (auto p : c.primes)
        if (p < 5 || !is_prime(p) || p > 200) throw ConfigError("prime " + std::to_string(p) + " must be an odd prime in [5, 200]");
    if (c.cutoff < 3 || c.cutoff > 8) throw ConfigError("cutoff must lie in [3, 8]");
    if (c.mode != "symbolic" && has(c.suites, "sequences") && c.cutoff < 6)
        throw ConfigError("the sequences suite needs cutoff >= 6");
    if (c.jobs < 1 || c.jobs > 256) throw ConfigError("jobs must lie in [1, 256]");
    return c;
}

std::vector<PrimeChoice> resolve_primes(const std::vector<uint32_t>& primes, uint64_t seed) {
    std::vector<PrimeChoice> out;
    std::vector<uint32_t> used;
    for (auto p : primes) {
        uint32_t q = p;
        for (;; q += 2) {
            if (!is_prime(q) || std::find(used.begin(), used.end(), q) != used.end()) continue;
            try {
                specialize_params(q, seed, true);
                break;
            } catch (const ExhaustedError&) {
            }
        }
        used.push_back(q);
        out.push_back({p, q});
    }
    return out;
}

bool SuiteResult::pass() const {
    for (auto& a : audits)
        if (!a.pass()) return false;
    return true;
}

Json SuiteResult::json() const {
    Json a = Json::array();
    size_t checks = 0, failed = 0;
    for (auto& r : audits) {
        a.push_back(r.json());
        checks += r.items.size();
        failed += r.failures();
    }
    return {{"suite", suite}, {"field", field}, {"pass", pass()}, {"checks", checks}, {"failed", failed}, {"audits", a}};
}

bool RunReport::pass() const {
    for (auto& s : suites)
        if (!s.pass()) return false;
    return agreement.pass();
}

Json RunReport::json() const {
    Json cfg = {{"mode", config.mode},   {"suites", config.suites}, {"primes", config.primes},
                {"seed", config.seed},   {"cutoff", config.cutoff}, {"jobs", config.jobs},
                {"dump_modules", config.dump_modules}};
    Json pr = Json::array();
    for (auto& p : primes) pr.push_back({{"requested", p.requested}, {"used", p.used}, {"substituted", p.requested != p.used}});
    Json su = Json::array();
    size_t checks = 0, failed = 0, errata = 0;
    for (auto& s : suites) {
        su.push_back(s.json());
        for (auto& r : s.audits) {
            checks += r.items.size();
            failed += r.failures();
            for (auto& it : r.items) errata += it.erratum;
        }
    }
    Json j;
    j["tool"] = "twist-verify";
    j["config"] = cfg;
    j["primes"] = pr;
    j["suites"] = su;
    j["agreement"] = agreement.json();
    j["extra"] = extra;
    j["summary"] = {{"suites", suites.size()}, {"checks", checks}, {"failed", failed}, {"errata", errata}};
    j["pass"] = pass();
    return j;
}

std::string RunReport::markdown() const {
    std::ostringstream o;
    o << "# Verification report\n\n";
    o << "mode " << config.mode << ", seed " << config.seed << ", cutoff " << config.cutoff << "\n\n";
    for (auto& p : primes)
        if (p.requested != p.used) o << "- prime " << p.requested << " replaced by " << p.used << "\n";
    o << "\n| suite | field | checks | failed | verdict |\n|---|---|---|---|---|\n";
    for (auto& s : suites) {
        size_t checks = 0, failed = 0;
        for (auto& r : s.audits) {
            checks += r.items.size();
            failed += r.failures();
        }
        o << "| " << s.suite << " | " << s.field << " | " << checks << " | " << failed << " | "
          << (s.pass() ? "PASS" : "FAIL") << " |\n";
    }
    o << "| agreement | all primes | " << agreement.items.size() << " | " << agreement.failures() << " | "
      << (agreement.pass() ? "PASS" : "FAIL") << " |\n";
    std::ostringstream err, bad;
    for (auto& s : suites)
        for (auto& r : s.audits)
            for (auto& it : r.items) {
                std::string line = "- " + s.field + " " + r.name + "." + it.name + "\n";
                if (it.erratum) err << line;
                if (!it.pass) bad << line;
            }
    if (!err.str().empty()) o << "\n## Corrected statements\n\n" << err.str();
    if (!bad.str().empty()) o << "\n## Failed checks\n\n" << bad.str();
    for (auto& t : tables) o << "\n" << t;
    return o.str();
}

RunReport run(const RunConfig& config, const std::function<void(const std::string&)>& log) {
    RunReport rep;
    rep.config = validate(config);
    rep.agreement.name = "prime_agreement";
    if (rep.config.mode != "specialized") rep.suites = run_symbolic(rep.config, log);
    if (rep.config.mode == "symbolic") return rep;
    rep.primes = resolve_primes(rep.config.primes, rep.config.seed);
    std::vector<Json> sigs;
    Json per = Json::object();
    for (auto& pc : rep.primes) {
        auto pr = run_prime(rep.config, pc.used, log);
        for (auto& s : pr.suites) rep.suites.push_back(std::move(s));
        sigs.push_back(pr.signature);
        if (pr.extra.contains("incidence_markdown")) {
            rep.tables.push_back(pr.extra["incidence_markdown"].get<std::string>());
            pr.extra.erase("incidence_markdown");
        }
        per[std::to_string(pc.used)] = pr.extra;
    }
    bool same = true;
    for (auto& s : sigs) same = same && s == sigs[0];
    rep.agreement.add("prime_independent_invariants_agree", same && !sigs.empty(),
                      {{"primes", rep.primes.size()}, {"signature", sigs.empty() ? Json() : sigs[0]}});
    rep.extra["per_prime"] = per;
    return rep;
}

} // namespace tw
