// setfam: command-line front end for the set-family toolkit.
//
// JSON results go to stdout (or --out); a one-line human summary goes to
// stderr.  Exit codes: 0 success, 1 bad input or violated precondition,
// 2 budget exhausted (a best-effort result is still emitted).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sf/approx.hpp"
#include "sf/counting.hpp"
#include "sf/family.hpp"
#include "sf/matching.hpp"
#include "sf/search.hpp"
#include "sf/simplify.hpp"
#include "sf/spread.hpp"

using json = nlohmann::ordered_json;
using namespace sf;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

std::uint64_t enumeration_cap() {
    for (const char* var : {"SETFAM_CAP", "HRTOOL_CAP"}) {
        if (const char* v = std::getenv(var)) {
            try {
                return std::stoull(v);
            } catch (const std::exception&) {
                throw std::invalid_argument(std::string(var) +
                                            " is not an unsigned integer");
            }
        }
    }
    return kDefaultEnumCap;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open family file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json mask_json(const Mask& m) { return json(m.elements()); }

json family_json(const SetFamily& f) {
    json sets = json::array();
    for (const Mask& m : f.members) sets.push_back(mask_json(m));
    return json{{"n", f.n}, {"count", f.size()}, {"sets", std::move(sets)}};
}

json frac_json(const Frac& v) { return json(to_string(v)); }
json big_json(const BigCount& v) { return json(to_string(v)); }

json base_json(const std::string& command) {
    return json{{"schema_version", kSchemaVersion}, {"command", command}};
}

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
        out << text;
    }
}

std::vector<int> parse_profile(const std::string& text) {
    std::vector<int> xs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size() || v < 0)
            throw std::invalid_argument("bad profile entry: " + item);
        xs.push_back(v);
    }
    if (xs.empty()) throw std::invalid_argument("empty profile");
    return xs;
}

// ------------------------------------------------------------ subcommands

int run_hvalue(int n, int k, int t, int s, const std::string& profile_text,
               const std::string& out_path) {
    json j = base_json("hvalue");
    j["n"] = n;
    j["k"] = k;
    j["t"] = t;
    j["s"] = s;
    int exit_code = kExitOk;
    if (!profile_text.empty()) {
        CliqueProfile p{t, parse_profile(profile_text)};
        BigCount v = size_AK_exact(n, k, p);
        j["profile"] = p.x;
        j["value"] = big_json(v);
        std::cerr << "hvalue(" << n << "," << k << "," << t << "): profile value "
                  << to_string(v) << "\n";
    } else {
        HOptResult h = h_opt(n, k, t, s, enumeration_cap());
        j["value"] = big_json(h.value);
        j["argmax_profile"] = h.argmax.x;
        j["profiles_scanned"] = h.profiles_scanned;
        j["exhaustive"] = h.exhaustive;
        if (!h.exhaustive) exit_code = kExitBudget;
        std::cerr << "hvalue(" << n << "," << k << "," << t << "," << s
                  << ") = " << to_string(h.value) << "\n";
    }
    if (n >= static_cast<long long>(s) * t)
        j["hprime"] = big_json(size_AM(n, k, t, s));
    if (n >= static_cast<long long>(k) * (s + 1))
        j["emc_bound"] = big_json(emc_bound(n, k, s));
    emit(j, out_path);
    return exit_code;
}

int run_nu(const std::string& family_path, int t, int cap,
           const std::string& out_path) {
    SetFamily f = parse_family(read_input(family_path));
    NuResult r = nu(f, t, cap);
    json j = base_json("nu");
    j["n"] = f.n;
    j["t"] = t;
    if (cap >= 0) j["cap"] = cap;
    if (r.value == kNuInfinite)
        j["value"] = "infinite";
    else
        j["value"] = r.value;
    j["exact"] = r.exact;
    json wit = json::array();
    for (int idx : r.witness) wit.push_back(mask_json(f.members[idx]));
    j["witness"] = std::move(wit);
    emit(j, out_path);
    std::cerr << "nu(F," << t << ") = "
              << (r.value == kNuInfinite ? std::string("infinite")
                                         : std::to_string(r.value))
              << (r.exact ? "" : " (capped)") << "\n";
    return kExitOk;
}

int run_cover(const std::string& family_path, const std::string& out_path) {
    SetFamily f = parse_family(read_input(family_path));
    CoverResult r = covering_number(f);
    json j = base_json("cover");
    j["n"] = f.n;
    j["tau"] = r.tau;
    j["cover"] = mask_json(r.cover);
    emit(j, out_path);
    std::cerr << "tau(F) = " << r.tau << "\n";
    return kExitOk;
}

int run_spread_check(const std::string& family_path, const std::string& r_text,
                     int fdepth, long long trials, int beta,
                     const std::string& delta_text, std::uint64_t seed,
                     int threads, const std::string& out_path) {
    SetFamily f = parse_family(read_input(family_path));
    Frac r = parse_frac(r_text);
    json j = base_json("spread-check");
    j["n"] = f.n;
    j["r"] = frac_json(r);
    SpreadCertificate cert =
        fdepth > 0 ? is_rf_spread(f, r, fdepth) : is_spread(f, r);
    if (fdepth > 0) j["f_depth"] = fdepth;
    j["verdict"] = cert.verdict;
    if (cert.violator) j["violator"] = mask_json(*cert.violator);
    if (cert.violator_t) j["violator_t"] = mask_json(*cert.violator_t);
    std::cerr << "spread(r=" << to_string(r) << "): "
              << (cert.verdict ? "yes" : "no") << "\n";
    if (trials > 0) {
        Frac delta = parse_frac(delta_text);
        SpreadTrialReport rep =
            spread_lemma_trial(f, beta, delta, r, trials, seed, threads);
        json mc;
        mc["beta"] = beta;
        mc["delta"] = frac_json(delta);
        mc["trials"] = rep.trials;
        mc["successes"] = rep.successes;
        mc["estimate"] = rep.estimate;
        mc["bound_plain"] = rep.bound_plain;
        mc["bound_entropy"] = rep.bound_entropy;
        mc["bound"] = rep.bound;
        mc["bound_positive"] = rep.bound_positive;
        mc["stderr"] = rep.stderr_est;
        mc["seed"] = seed;
        mc["threads"] = threads;
        j["containment_trial"] = std::move(mc);
        std::cerr << "containment estimate " << rep.estimate << " vs bound "
                  << rep.bound << "\n";
    }
    emit(j, out_path);
    return kExitOk;
}

int run_peel(const std::string& family_path, int t, int s, int q,
             const std::string& out_path) {
    SetFamily f = parse_family(read_input(family_path));
    PeelingTrace tr = peel(f, t, s, q);
    json j = base_json("peel");
    j["n"] = tr.n;
    j["t"] = tr.t;
    j["s"] = tr.s;
    j["q"] = tr.q;
    j["input_was_maximal"] = tr.input_was_maximal;
    json chain = json::object();
    for (const auto& [i, fam] : tr.chain) chain[std::to_string(i)] = family_json(fam);
    j["chain"] = std::move(chain);
    json layers = json::object();
    for (const auto& [i, fam] : tr.layers) layers[std::to_string(i)] = family_json(fam);
    j["layers"] = std::move(layers);
    j["phi"] = tr.phi;
    json tstar = json::array();
    for (const TstarEntry& e : tr.tstar)
        tstar.push_back(json{{"u", mask_json(e.u)}, {"f", e.f}});
    j["tstar"] = std::move(tstar);
    j["ell"] = tr.ell;
    j["decomposition_ok"] = tr.decomposition_ok;
    j["layer_bound_checked"] = tr.layer_bound_checked;
    j["layer_bound_ok"] = tr.layer_bound_ok;
    emit(j, out_path);
    std::cerr << "peel: phi = " << tr.phi << ", ell = " << tr.ell << " of s = "
              << tr.s << "\n";
    return kExitOk;
}

json decomposition_json(const ApproxDecomposition& d) {
    json pieces = json::array();
    for (const ApproxPiece& p : d.pieces)
        pieces.push_back(json{{"s", mask_json(p.s)},
                              {"x", mask_json(p.x)},
                              {"size", p.piece.size()},
                              {"piece", family_json(p.piece)}});
    return json{{"s_family", family_json(d.s_family)},
                {"r_family", family_json(d.r_family)},
                {"pieces", std::move(pieces)},
                {"r", frac_json(d.r)},
                {"theta_used", frac_json(d.theta_used)},
                {"remainder_bound", frac_json(d.remainder_bound)},
                {"remainder_ok", d.remainder_ok},
                {"steps", d.steps}};
}

int run_approximate(const std::string& family_path, int t, int s, int sigma,
                    const std::string& r_text, int q, bool force_loop,
                    int max_steps, const std::string& out_path) {
    SetFamily f = parse_family(read_input(family_path));
    json j = base_json("approximate");
    j["t"] = t;
    j["s"] = s;
    if (!r_text.empty() || q > 0) {
        if (r_text.empty() || q <= 0)
            throw std::invalid_argument(
                "direct mode needs both --r and --q");
        Frac r = parse_frac(r_text);
        int k = f.uniform.value_or(0);
        ApproxDecomposition d = spread_approximate(
            f, Frac(1), std::nullopt, 0, std::min(q, k), q, r,
            trivial_oracle());
        j["mode"] = "direct";
        j["q"] = q;
        j["decomposition"] = decomposition_json(d);
        emit(j, out_path);
        std::cerr << "approximate: " << d.pieces.size() << " pieces, remainder "
                  << d.r_family.size() << "\n";
        return kExitOk;
    }
    j["sigma"] = sigma;
    DriverConfig cfg;
    cfg.force_loop = force_loop;
    if (max_steps > 0) cfg.max_steps = max_steps;
    DriverResult r = iterative_driver(f, t, s, sigma, cfg);
    j["mode"] = "driver";
    j["shortcut"] = r.shortcut;
    j["aborted"] = r.aborted;
    if (r.aborted) j["abort_reason"] = r.abort_reason;
    j["t_prime"] = r.t_prime;
    j["step_cap"] = r.step_cap;
    j["target_q"] = r.target_q;
    j["remainder_bound_sum"] = frac_json(r.remainder_bound_sum);
    j["remainder_sum_ok"] = r.remainder_sum_ok;
    json log = json::array();
    for (const DriverStep& stp : r.log) {
        json e;
        e["i"] = stp.i;
        e["stage"] = stp.stage;
        e["l1"] = stp.l1;
        e["l2_raw"] = stp.l2_raw;
        e["l2_eff"] = stp.l2_eff;
        e["q_raw"] = stp.q_raw;
        e["q_eff"] = stp.q_eff;
        e["tprime_raw"] = stp.tprime_raw;
        e["tprime_eff"] = stp.tprime_eff;
        e["r_sched"] = frac_json(stp.r_sched);
        e["r_eff"] = frac_json(stp.r_eff);
        e["eta"] = frac_json(stp.eta);
        e["theta_sched_log2"] = stp.theta_sched_log2;
        e["theta_observed"] = frac_json(stp.theta_observed);
        e["lambda"] = frac_json(stp.lambda);
        e["removed"] = big_json(stp.removed);
        e["s_size"] = stp.s_size;
        e["f_left"] = stp.f_left;
        e["deviations"] = stp.deviations;
        log.push_back(std::move(e));
    }
    j["log"] = std::move(log);
    j["decomposition"] = decomposition_json(r.decomp);
    emit(j, out_path);
    std::cerr << "approximate: " << (r.aborted ? "aborted: " + r.abort_reason
                                               : "completed")
              << ", |S| = " << r.decomp.s_family.size() << ", |R| = "
              << r.decomp.r_family.size() << "\n";
    return kExitOk;
}

int run_extract(const std::string& family_path, int t, int s, int ell,
                const std::string& out_path) {
    SetFamily f = parse_family(read_input(family_path));
    if (ell < 0) ell = std::max(0, f.max_member_size() - t);
    auto got = extract_cliques(f, t, s, ell);
    json j = base_json("extract-cliques");
    j["t"] = t;
    j["s"] = s;
    j["ell"] = ell;
    j["found"] = got.has_value();
    if (got) {
        json cl = json::array();
        for (const ExtractedClique& c : *got)
            cl.push_back(json{{"support", mask_json(c.support)}, {"x", c.x}});
        j["cliques"] = std::move(cl);
    }
    emit(j, out_path);
    std::cerr << "extract-cliques: "
              << (got ? std::to_string(got->size()) + " cliques" : "no structure")
              << "\n";
    return kExitOk;
}

int run_search_max(int n, int k, int t, int s, std::uint64_t budget,
                   bool classify, const std::string& out_path) {
    ExtremalResult r = max_family_exhaustive(n, k, t, s, budget);
    json j = base_json("search-max");
    j["n"] = n;
    j["k"] = k;
    j["t"] = t;
    j["s"] = s;
    j["max_size"] = r.max_size;
    j["exhaustive"] = r.exhaustive;
    j["nodes"] = r.nodes;
    j["witness"] = family_json(r.witness);
    if (classify && r.exhaustive) {
        StructureClassification cl = verify_extremal_structure(r);
        json c;
        c["is_clique_union_shadow"] = cl.is_clique_union_shadow;
        if (cl.profile) c["profile"] = cl.profile->x;
        c["is_full_t_star"] = cl.is_full_t_star;
        c["h_value"] = big_json(cl.h_value);
        c["exceeds_h"] = cl.exceeds_h;
        c["note"] = cl.note;
        j["classification"] = std::move(c);
    }
    emit(j, out_path);
    std::cerr << "search-max(" << n << "," << k << "," << t << "," << s
              << ") = " << r.max_size
              << (r.exhaustive ? "" : " (budget exhausted)") << "\n";
    return r.exhaustive ? kExitOk : kExitBudget;
}

int run_verify(const std::string& suite, const std::string& out_path) {
    if (suite != "smallcases")
        throw std::invalid_argument("unknown suite: " + suite);
    json checks = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok,
                      const std::string& detail) {
        checks.push_back(json{{"name", name}, {"ok", ok}, {"detail", detail}});
        all_ok = all_ok && ok;
        std::cerr << (ok ? "  ok  " : " FAIL ") << name << ": " << detail
                  << "\n";
    };

    {
        ExtremalResult r = max_family_exhaustive(6, 3, 2, 2);
        record("max(6,3,2,2) = 10", r.exhaustive && r.max_size == 10,
               "found " + std::to_string(r.max_size));
        StructureClassification cl = verify_extremal_structure(r);
        record("(6,3,2,2) witness beats every clique-union shadow",
               cl.exceeds_h && !cl.is_clique_union_shadow,
               "h = " + to_string(cl.h_value));
    }
    {
        ExtremalResult r = max_family_exhaustive(6, 3, 2, 3);
        record("max(6,3,2,3) = 14", r.exhaustive && r.max_size == 14,
               "found " + std::to_string(r.max_size));
        StructureClassification cl = verify_extremal_structure(r);
        record("(6,3,2,3) witness beats every clique-union shadow",
               cl.exceeds_h && !cl.is_clique_union_shadow,
               "h = " + to_string(cl.h_value));
    }
    {
        Kk1Report rep = verify_kk1(9, 3, 1);
        record("near-kernel bound at (9,3,1)",
               rep.agrees && rep.construction_size_ok && rep.construction_nu_ok,
               "bound " + to_string(rep.bound));
    }
    json j = base_json("verify");
    j["suite"] = suite;
    j["checks"] = std::move(checks);
    j["all_ok"] = all_ok;
    emit(j, out_path);
    std::cerr << (all_ok ? "suite passed" : "suite FAILED") << "\n";
    return all_ok ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"set-family toolkit: matching numbers, spread certificates, "
                 "extremal search and decomposition pipelines"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    app.add_option("--out", out_path, "write JSON here instead of stdout");

    // hvalue
    auto* hv = app.add_subcommand(
        "hvalue", "best clique-union shadow size over profiles");
    int hv_n = 0, hv_k = 0, hv_t = 0, hv_s = 1;
    std::string hv_profile;
    hv->add_option("--n", hv_n, "ground-set size")->required();
    hv->add_option("--k", hv_k, "uniformity")->required();
    hv->add_option("--t", hv_t, "intersection threshold")->required();
    hv->add_option("--s", hv_s, "number of cliques");
    hv->add_option("--profile", hv_profile, "evaluate one profile x1,x2,...");

    // nu
    auto* nu_cmd = app.add_subcommand("nu", "t-matching number of a family");
    std::string nu_family;
    int nu_t = 1, nu_cap = -1;
    nu_cmd->add_option("--family", nu_family, "family file ('-' = stdin)")
        ->required();
    nu_cmd->add_option("--t", nu_t, "intersection threshold")->required();
    nu_cmd->add_option("--cap", nu_cap, "stop once nu > cap is certain");

    // cover
    auto* cover_cmd = app.add_subcommand("cover", "minimum hitting set");
    std::string cover_family;
    cover_cmd->add_option("--family", cover_family, "family file ('-' = stdin)")
        ->required();

    // spread-check
    auto* sp = app.add_subcommand("spread-check",
                                  "exact r-spread certificate, optionally a "
                                  "seeded containment trial");
    std::string sp_family, sp_r, sp_delta = "9/10";
    int sp_f = 0, sp_beta = 1, sp_threads = 1;
    long long sp_trials = 0;
    std::uint64_t sp_seed = 0;
    sp->add_option("--family", sp_family, "family file ('-' = stdin)")
        ->required();
    sp->add_option("--r", sp_r, "spread ratio p/q")->required();
    sp->add_option("--f", sp_f, "also check restrictions up to this size");
    sp->add_option("--trials", sp_trials, "Monte-Carlo containment trials");
    sp->add_option("--beta", sp_beta, "containment density multiplier");
    sp->add_option("--delta", sp_delta, "containment density p/q");
    sp->add_option("--seed", sp_seed, "trial seed");
    sp->add_option("--threads", sp_threads, "trial worker threads");

    // peel
    auto* pl = app.add_subcommand("peel", "layered shrink-and-peel chain");
    std::string pl_family;
    int pl_t = 0, pl_s = 0, pl_q = 0;
    pl->add_option("--family", pl_family, "family file ('-' = stdin)")
        ->required();
    pl->add_option("--t", pl_t, "intersection threshold")->required();
    pl->add_option("--s", pl_s, "matching budget")->required();
    pl->add_option("--q", pl_q, "top level of the chain")->required();

    // approximate
    auto* ap = app.add_subcommand(
        "approximate", "spread decomposition via the scheduling driver, or "
                       "directly with --r/--q");
    std::string ap_family, ap_r;
    int ap_t = 0, ap_s = 0, ap_sigma = 0, ap_q = 0, ap_max_steps = 0;
    bool ap_force = false;
    ap->add_option("--family", ap_family, "family file ('-' = stdin)")
        ->required();
    ap->add_option("--t", ap_t, "intersection threshold")->required();
    ap->add_option("--s", ap_s, "matching budget")->required();
    ap->add_option("--sigma", ap_sigma, "precision exponent");
    ap->add_option("--r", ap_r, "direct mode: spread ratio p/q");
    ap->add_option("--q", ap_q, "direct mode: split-size stop");
    ap->add_flag("--force-loop", ap_force, "skip the small-k shortcut");
    ap->add_option("--max-steps", ap_max_steps, "override the step cap");

    // extract-cliques
    auto* ex = app.add_subcommand("extract-cliques",
                                  "greedy clique-union recovery");
    std::string ex_family;
    int ex_t = 0, ex_s = 0, ex_ell = -1;
    ex->add_option("--family", ex_family, "family file ('-' = stdin)")
        ->required();
    ex->add_option("--t", ex_t, "intersection threshold")->required();
    ex->add_option("--s", ex_s, "clique budget")->required();
    ex->add_option("--ell", ex_ell, "size slack (default: max size - t)");

    // search-max
    auto* sm = app.add_subcommand("search-max",
                                  "maximum family size under a matching cap");
    int sm_n = 0, sm_k = 0, sm_t = 0, sm_s = 0;
    std::uint64_t sm_budget = 50'000'000ULL;
    bool sm_classify = false;
    sm->add_option("--n", sm_n, "ground-set size")->required();
    sm->add_option("--k", sm_k, "uniformity")->required();
    sm->add_option("--t", sm_t, "intersection threshold")->required();
    sm->add_option("--s", sm_s, "matching budget")->required();
    sm->add_option("--budget", sm_budget, "search node budget");
    sm->add_flag("--classify", sm_classify, "classify the witness structure");

    // verify
    auto* vf = app.add_subcommand("verify", "built-in verification suites");
    std::string vf_suite;
    vf->add_option("--suite", vf_suite, "suite name (smallcases)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (hv->parsed())
            return run_hvalue(hv_n, hv_k, hv_t, hv_s, hv_profile, out_path);
        if (nu_cmd->parsed()) return run_nu(nu_family, nu_t, nu_cap, out_path);
        if (cover_cmd->parsed()) return run_cover(cover_family, out_path);
        if (sp->parsed())
            return run_spread_check(sp_family, sp_r, sp_f, sp_trials, sp_beta,
                                    sp_delta, sp_seed, sp_threads, out_path);
        if (pl->parsed()) return run_peel(pl_family, pl_t, pl_s, pl_q, out_path);
        if (ap->parsed())
            return run_approximate(ap_family, ap_t, ap_s, ap_sigma, ap_r, ap_q,
                                   ap_force, ap_max_steps, out_path);
        if (ex->parsed())
            return run_extract(ex_family, ex_t, ex_s, ex_ell, out_path);
        if (sm->parsed())
            return run_search_max(sm_n, sm_k, sm_t, sm_s, sm_budget,
                                  sm_classify, out_path);
        if (vf->parsed()) return run_verify(vf_suite, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    std::cerr << "error: no subcommand\n";
    return kExitError;
}
