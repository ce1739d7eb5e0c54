// Command-line surface: reproducible experiments with JSON reports.
//
// Exit codes: 0 success / valid certificate, 2 invalid certificate or failed
// bound (including exhausted searches), 1 usage or I/O errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lorentz/acceptance.hpp"
#include "lorentz/approx.hpp"
#include "lorentz/chain.hpp"
#include "lorentz/finite.hpp"
#include "lorentz/json_io.hpp"
#include "lorentz/version.hpp"

namespace {

using lorentz::Integer;
using lorentz::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailedCheck = 2;

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lorentz::ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw lorentz::ParseError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

Json report_head(const std::string& command, Json params) {
    return Json{{"version", lorentz::kVersion}, {"command", command}, {"params", std::move(params)}};
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

std::size_t set_cap_default() {
    if (const char* env = std::getenv("LORENTZ_SET_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 10000000;
}

Json chain_verification(const lorentz::PrimeField& f, long k) {
    bool all = lorentz::verify_chain(f, k);
    return Json{{"is_prime", lorentz::is_prime(f.modulus())},
                {"mod8_residue", static_cast<long>(mpz_fdiv_ui(f.modulus().get_mpz_t(), 8))},
                {"chain_verified_to", k},
                {"all_quadratic_residues", all}};
}

// A --certify run re-checks the found prime and demands a deterministic
// result; above 2^64 only more rounds are available, which fails the demand.
bool append_certificate(Json& rep, const Integer& p) {
    auto cert = lorentz::certify_prime(p);
    rep["primality_certificate"] = Json{{"probable_prime", cert.probable_prime},
                                        {"deterministic", cert.deterministic},
                                        {"rounds", cert.rounds}};
    return cert.probable_prime && cert.deterministic;
}

int run_chainprime(long k, const std::string& min_str, bool mod8, long limit, bool certify,
                   bool pretty) {
    lorentz::ChainPrimeRequest req;
    req.k = k;
    req.min_bound = Integer(min_str);
    req.require_mod8 = mod8;
    req.limit = limit;
    Json params{{"k", k}, {"min", min_str}, {"mod8", mod8}, {"limit", limit}};
    try {
        auto f = lorentz::find_chain_prime(req);
        long len = lorentz::chain_length(*f);
        Json rep = report_head("chainprime", params);
        rep["prime"] = f->modulus().get_str();
        rep["chain_length"] = len;
        rep["verification"] = chain_verification(*f, k);
        bool certified = true;
        if (certify) certified = append_certificate(rep, f->modulus());
        if (pretty) {
            std::cout << "prime: " << f->modulus().get_str() << "\n"
                      << "chain length: " << len << "\n"
                      << "verified: 1.." << k << " are quadratic residues mod p\n";
            if (certify)
                std::cout << "primality: " << (certified ? "deterministic" : "probabilistic only")
                          << "\n";
        } else {
            emit(rep);
        }
        return certified ? kExitOk : kExitFailedCheck;
    } catch (const lorentz::SearchExhausted& e) {
        Json rep = report_head("chainprime", params);
        rep["error"] = std::string("search_exhausted: ") + e.what();
        emit(rep);
        return kExitFailedCheck;
    }
}

int run_theorem1(long k, long eff, long limit, bool certify, bool pretty) {
    Json params{{"k", k}, {"effective_bound", eff}, {"limit", limit}};
    Integer bound = lorentz::theorem1_bound(k);
    try {
        auto f = lorentz::find_theorem1_prime(k, eff, limit);
        long len = lorentz::chain_length(*f);
        Json rep = report_head("theorem1-prime", params);
        rep["bound_32k16"] = bound.get_str();
        rep["prime"] = f->modulus().get_str();
        rep["chain_length"] = len;
        rep["verification"] = chain_verification(*f, eff);
        bool certified = true;
        if (certify) certified = append_certificate(rep, f->modulus());
        if (pretty) {
            std::cout << "bound 32k^16: " << bound.get_str() << "\n"
                      << "prime: " << f->modulus().get_str() << "\n"
                      << "chain length: " << len << " (needs >= " << eff << ")\n";
        } else {
            emit(rep);
        }
        return certified ? kExitOk : kExitFailedCheck;
    } catch (const lorentz::SearchExhausted& e) {
        Json rep = report_head("theorem1-prime", params);
        rep["bound_32k16"] = bound.get_str();
        rep["error"] = std::string("search_exhausted: ") + e.what();
        emit(rep);
        return kExitFailedCheck;
    }
}

lorentz::LorentzTransform<double> load_real_transform(const std::string& path, double tol,
                                                      bool* was_rational = nullptr,
                                                      lorentz::Mat4<lorentz::Rational>* exact = nullptr) {
    lorentz::ParsedMatrix pm = lorentz::parse_matrix(load_json_file(path));
    if (pm.domain == "real") {
        if (was_rational) *was_rational = false;
        return lorentz::validate(*pm.real, tol);
    }
    if (pm.domain == "rational") {
        if (was_rational) *was_rational = true;
        if (exact) *exact = *pm.rational;
        return lorentz::to_double(lorentz::validate(*pm.rational));
    }
    throw lorentz::ParseError("this command needs a real or rational matrix");
}

Json factors_json(const std::vector<lorentz::LorentzTransform<lorentz::Rational>>& fs) {
    Json arr = Json::array();
    for (const auto& f : fs) arr.push_back(lorentz::to_json(f));
    return arr;
}

int run_approx(const std::string& in, long k, std::optional<double> eps, std::optional<double> big_m,
               double tol, bool pretty) {
    Json params{{"in", in},
                {"k", k},
                {"epsilon", eps ? Json(*eps) : Json(nullptr)},
                {"M", big_m ? Json(*big_m) : Json(nullptr)},
                {"tolerance", tol}};
    bool was_rational = false;
    auto t = load_real_transform(in, tol, &was_rational);
    auto res = lorentz::rational_approximate(t, lorentz::CkBound(k));

    Json rep = report_head("approx", params);
    rep["input_domain"] = was_rational ? "rational" : "real";
    rep["input_norm"] = lorentz::frobenius_norm(t);
    rep["result"] = Json{{"matrix", lorentz::to_json(res.Tq)},
                         {"k_effective", res.k_effective.get_str()},
                         {"error", res.error},
                         {"factors", factors_json(res.factors)}};
    bool norm_ok = !big_m || lorentz::frobenius_norm(t) <= *big_m;
    bool eps_ok = !eps || res.error < *eps;
    rep["checks"] = Json{{"exact_lorentz", true},  // validate() ran inside
                         {"norm_within_M", big_m ? Json(norm_ok) : Json(nullptr)},
                         {"epsilon_satisfied", eps ? Json(eps_ok) : Json(nullptr)}};
    if (pretty) {
        std::cout << "error: " << res.error << "\nk_effective: " << res.k_effective.get_str()
                  << "\nfactors: " << res.factors.size() << "\n";
    } else {
        emit(rep);
    }
    return (norm_ok && eps_ok) ? kExitOk : kExitFailedCheck;
}

int run_retract(const std::string& in, long k, double tol, bool pretty) {
    Json params{{"in", in}, {"k", k}, {"tolerance", tol}};
    lorentz::ParsedMatrix pm = lorentz::parse_matrix(load_json_file(in));
    Json rep = report_head("retract", params);

    lorentz::CkBound kb(k);
    if (pm.domain == "rational") {
        auto t = lorentz::validate(*pm.rational);
        auto r = lorentz::retract_extended(t, kb);
        bool fixed = r == t;
        rep["input_domain"] = "rational";
        rep["component"] = Json{{"det_part", r.det_part()}, {"chronicity", to_string(r.chronicity())}};
        rep["fixed_point"] = fixed;
        rep["error"] = lorentz::frobenius_norm(lorentz::to_double(t.matrix()) - lorentz::to_double(r.matrix()));
        rep["result"] = lorentz::to_json(r);
    } else if (pm.domain == "real") {
        auto t = lorentz::validate(*pm.real, tol);
        auto r = lorentz::retract_extended(t, kb);
        rep["input_domain"] = "real";
        rep["component"] = Json{{"det_part", r.det_part()}, {"chronicity", to_string(r.chronicity())}};
        rep["fixed_point"] = false;  // float inputs are never members of A
        rep["error"] = lorentz::frobenius_norm(t.matrix() - lorentz::to_double(r.matrix()));
        rep["result"] = lorentz::to_json(r);
    } else {
        throw lorentz::ParseError("retract needs a real or rational matrix");
    }
    if (pretty)
        std::cout << "error: " << rep["error"].dump() << "\nfixed point: " << rep["fixed_point"].dump()
                  << "\n";
    else
        emit(rep);
    return kExitOk;
}

int run_verify(const std::string& set_path, long enum_k, const std::string& p_str, bool pretty) {
    Json params{{"p", p_str},
                {"set", set_path.empty() ? Json(nullptr) : Json(set_path)},
                {"enumerate_a_k", enum_k > 0 ? Json(enum_k) : Json(nullptr)}};
    auto field = lorentz::PrimeField::make(Integer(p_str));

    std::vector<lorentz::LorentzTransform<lorentz::Rational>> a;
    if (!set_path.empty()) {
        Json j = load_json_file(set_path);
        const Json* arr = nullptr;
        if (j.is_array())
            arr = &j;
        else if (j.is_object() && j.contains("matrices") && j.at("matrices").is_array())
            arr = &j.at("matrices");
        else
            throw lorentz::ParseError("set file must be a JSON array of matrices");
        for (const auto& m : *arr) {
            lorentz::ParsedMatrix pm = lorentz::parse_matrix(m);
            if (pm.domain != "rational")
                throw lorentz::ParseError("verify expects rational matrices");
            a.push_back(lorentz::validate(*pm.rational));
        }
    } else {
        a = lorentz::enumerate_a(lorentz::CkBound(enum_k));
    }

    auto cert = lorentz::local_iso_check(a, field);
    Json rep = report_head("verify", params);
    rep["certificate"] = Json{{"k", cert.k.get_str()},
                              {"effective_bound", cert.effective_bound.get_str()},
                              {"p", cert.p.get_str()},
                              {"size_A", cert.size_A},
                              {"size_AA", cert.size_AA},
                              {"injective", cert.injective},
                              {"homomorphic", cert.homomorphic},
                              {"orthochronicity_preserved", cert.orthochronicity_preserved},
                              {"bound_check", cert.bound_check},
                              {"valid", cert.valid()}};
    if (pretty) {
        std::cout << "|A| = " << cert.size_A << ", |AA| = " << cert.size_AA << "\n"
                  << "injective: " << cert.injective << ", homomorphic: " << cert.homomorphic << "\n"
                  << "orthochronous preserved: " << cert.orthochronicity_preserved
                  << ", 32k^16 < p: " << cert.bound_check << "\n"
                  << (cert.valid() ? "VALID" : "INVALID") << "\n";
    } else {
        emit(rep);
    }
    return cert.valid() ? kExitOk : kExitFailedCheck;
}

int run_enumerate(long p, bool check_dickson, std::size_t cap, bool pretty) {
    Json params{{"p", p}, {"check_dickson", check_dickson}, {"cap", cap}};
    auto field = lorentz::PrimeField::make(p);
    auto gens = lorentz::standard_generators(field);
    auto closure = lorentz::bfs_closure(gens, field, cap);

    Integer pp(p);
    Integer formula = pp * pp * (pp * pp + 1) * (pp * pp - 1);

    Json rep = report_head("enumerate", params);
    rep["generators"] = gens.size();
    rep["bfs_order"] = closure.size();
    rep["formula_order"] = formula.get_str();

    bool equal = true;
    if (check_dickson) {
        auto enumerated = lorentz::enumerate_group(field);
        equal = closure.size() == enumerated.size();
        for (std::size_t i = 0; equal && i < closure.size(); ++i)
            equal = closure[i].matrix() == enumerated[i].matrix();
        rep["enumerated_order"] = enumerated.size();
        rep["dickson_equal"] = equal;
    }
    if (pretty) {
        std::cout << "order: " << closure.size() << " (formula " << formula.get_str() << ")\n";
        if (check_dickson) std::cout << (equal ? "EQUAL" : "DIFFERENT") << "\n";
    } else {
        emit(rep);
    }
    return (!check_dickson || equal) ? kExitOk : kExitFailedCheck;
}

int run_explore(long p, long table_limit, bool pretty) {
    Json params{{"p", p}, {"table_limit", table_limit}};
    auto field = lorentz::PrimeField::make(p);
    auto bg = lorentz::boost_group(field);
    auto pair = lorentz::find_antichronous_pair(field);

    Json rep = report_head("explore", params);
    rep["boost_group"] = Json{{"generator", bg.generator.str()}, {"order", bg.order.get_str()}};
    rep["antichronous_pair"] =
        pair ? Json{{"alpha", pair->first.str()}, {"gamma", pair->second.str()}} : Json(nullptr);

    Json table = Json::array();
    bool implication = true;
    long emitted = 0;
    for (long x = 1; x <= (p - 1) / 2 && emitted < table_limit; ++x) {
        lorentz::FpElem alpha = lorentz::FpElem(x, field) * lorentz::FpElem(x, field);
        bool seen = false;
        for (const auto& row : table)
            if (row.at("alpha").get<std::string>() == alpha.str()) seen = true;
        if (seen) continue;
        auto vb = lorentz::velocity_bounds_check(alpha);
        if (vb.sq_plus_one_square && !vb.bounded()) implication = false;
        table.push_back(Json{{"alpha", vb.alpha.str()},
                             {"v", vb.v.str()},
                             {"alpha_sq_plus_1_square", vb.sq_plus_one_square},
                             {"bounded", vb.bounded()}});
        ++emitted;
    }
    rep["velocity_bounds"] = table;
    rep["implication_holds"] = implication;

    if (pretty) {
        std::cout << "boost group: generator " << bg.generator.str() << ", order " << bg.order.get_str()
                  << "\n";
        if (pair)
            std::cout << "antichronous pair: (" << pair->first.str() << ", " << pair->second.str()
                      << ")\n";
        else
            std::cout << "antichronous pair: none\n";
        std::cout << "alpha  v  (a^2+1 sq)  (-1<v<1)\n";
        for (const auto& row : table)
            std::cout << row.at("alpha").get<std::string>() << "  " << row.at("v").get<std::string>()
                      << "  " << row.at("alpha_sq_plus_1_square").dump() << "  "
                      << row.at("bounded").dump() << "\n";
    } else {
        emit(rep);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lorentz groups over R, Q and F_p: exact construction, rational approximation, "
                 "and local-isomorphism certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", lorentz::kVersion);

    bool pretty = false;
    app.add_flag("--pretty", pretty, "human-readable tables instead of JSON");

    // chainprime
    auto* cp = app.add_subcommand("chainprime", "smallest chain prime for depth k");
    cp->fallthrough();
    long cp_k = 1;
    std::string cp_min = "0";
    bool cp_mod8 = true;
    long cp_limit = 100000000;
    cp->add_option("--k", cp_k, "chain depth")->required();
    cp->add_option("--min", cp_min, "exclusive lower bound for p");
    cp->add_flag("--mod8,!--no-mod8", cp_mod8, "require p = 7 (mod 8)");
    cp->add_option("--limit", cp_limit, "candidate budget");
    bool cp_certify = false;
    cp->add_flag("--certify", cp_certify, "require a deterministic primality pass");

    // theorem1-prime
    auto* tp = app.add_subcommand("theorem1-prime", "prime above 32 k^16 with the chain condition");
    tp->fallthrough();
    long tp_k = 1, tp_eff = 0, tp_limit = 100000000;
    tp->add_option("--k", tp_k, "coefficient bound k")->required();
    tp->add_option("--effective-bound", tp_eff, "chain depth (defaults to k)");
    tp->add_option("--limit", tp_limit, "candidate budget");
    bool tp_certify = false;
    tp->add_flag("--certify", tp_certify, "require a deterministic primality pass");

    // approx
    auto* ap = app.add_subcommand("approx", "rational approximation in C_k");
    ap->fallthrough();
    std::string ap_in;
    long ap_k = 0;
    double ap_tol = 1e-9;
    std::optional<double> ap_eps, ap_m;
    double ap_eps_v = 0, ap_m_v = 0;
    ap->add_option("--in", ap_in, "matrix JSON file")->required();
    ap->add_option("--k", ap_k, "C_k bound")->required();
    auto* eps_opt = ap->add_option("--epsilon", ap_eps_v, "required error bound");
    auto* m_opt = ap->add_option("--M", ap_m_v, "norm bound for the input");
    ap->add_option("--tolerance", ap_tol, "float Lorentz-predicate tolerance");

    // retract
    auto* rt = app.add_subcommand("retract", "retraction onto the C_k retract, any component");
    rt->fallthrough();
    std::string rt_in;
    long rt_k = 0;
    double rt_tol = 1e-9;
    rt->add_option("--in", rt_in, "matrix JSON file")->required();
    rt->add_option("--k", rt_k, "C_k bound")->required();
    rt->add_option("--tolerance", rt_tol, "float Lorentz-predicate tolerance");

    // verify
    auto* vf = app.add_subcommand("verify", "local-isomorphism certificate for a set A");
    vf->fallthrough();
    std::string vf_set, vf_p;
    long vf_enum_k = 0;
    vf->add_option("--set", vf_set, "JSON array of rational matrices");
    vf->add_option("--enumerate-a", vf_enum_k, "use A = enumerate_a(k) instead of --set");
    vf->add_option("--p", vf_p, "prime modulus")->required();

    // enumerate
    auto* en = app.add_subcommand("enumerate", "closure of the standard generators over F_p");
    en->fallthrough();
    long en_p = 7;
    bool en_dickson = false;
    std::size_t en_cap = set_cap_default();
    en->add_option("--p", en_p, "prime modulus")->required();
    en->add_flag("--check-dickson", en_dickson, "cross-check against the frame enumeration");
    en->add_option("--cap", en_cap, "element budget for the closure");

    // explore
    auto* ex = app.add_subcommand("explore", "boost group, antichronous pairs, velocity bounds");
    ex->fallthrough();
    long ex_p = 7;
    long ex_limit = 64;
    ex->add_option("--p", ex_p, "prime modulus")->required();
    ex->add_option("--table-limit", ex_limit, "velocity table row cap");

    // acceptance
    auto* ac = app.add_subcommand("acceptance", "run the full acceptance suite");
    ac->fallthrough();
    std::uint64_t ac_seed = 0;
    ac->add_option("--seed", ac_seed, "seed for the randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cp->parsed()) return run_chainprime(cp_k, cp_min, cp_mod8, cp_limit, cp_certify, pretty);
        if (tp->parsed()) {
            if (tp_eff == 0) tp_eff = tp_k;
            return run_theorem1(tp_k, tp_eff, tp_limit, tp_certify, pretty);
        }
        if (ap->parsed()) {
            if (eps_opt->count()) ap_eps = ap_eps_v;
            if (m_opt->count()) ap_m = ap_m_v;
            return run_approx(ap_in, ap_k, ap_eps, ap_m, ap_tol, pretty);
        }
        if (rt->parsed()) return run_retract(rt_in, rt_k, rt_tol, pretty);
        if (vf->parsed()) {
            if (vf_set.empty() && vf_enum_k <= 0)
                throw lorentz::ParseError("verify needs --set or --enumerate-a");
            return run_verify(vf_set, vf_enum_k, vf_p, pretty);
        }
        if (en->parsed()) return run_enumerate(en_p, en_dickson, en_cap, pretty);
        if (ex->parsed()) return run_explore(ex_p, ex_limit, pretty);
        if (ac->parsed()) return lorentz::run_acceptance(std::cout, ac_seed) ? kExitOk : kExitFailedCheck;
    } catch (const lorentz::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lorentz::SearchExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailedCheck;
    } catch (const lorentz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
