// cfx: command-line driver for the verification suites
#include "cfx/boundary.hpp"
#include "cfx/flat_complex.hpp"
#include "cfx/group.hpp"
#include "cfx/monge_ampere.hpp"
#include "cfx/random.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cfx;
using json = nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kPrecondition = 3 };

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Common {
    int n = 1, k = 1, trials = 10, degree = 3;
    std::uint64_t seed = 1;
    std::string group = "rightQH", group_file, out, format = "json";
};

int degree_cap(int fallback) {
    if (const char *e = std::getenv("CFX_MAX_DEGREE")) {
        int v = std::atoi(e);
        if (v < 1 || v > 64) throw InputError("CFX_MAX_DEGREE must be an integer in 1..64");
        return v;
    }
    return fallback;
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path + ": " + e.what());
    }
}

GroupSpec load_group(const Common &c) {
    if (!c.group_file.empty()) return GroupSpec::from_json(read_json_file(c.group_file));
    return named_group(c.group, c.n);
}

void check_limits(const Common &c, bool need_k) {
    if (c.n < 1 || c.n > 3) throw InputError("n must be in 1..3");
    if (need_k && (c.k < 0 || c.k > 4)) throw InputError("k must be in 0..4");
    if (c.trials < 0) throw InputError("trials must be nonnegative");
    if (c.degree < 0) throw InputError("degree must be nonnegative");
    int cap = degree_cap(kDefaultDegreeCap);
    if (c.degree > cap) throw InputError("degree " + std::to_string(c.degree) + " exceeds the degree cap " + std::to_string(cap));
}

std::vector<std::string> split(const std::string &s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return r + "\"";
}

// reports → one CSV row each
std::string reports_csv(const json &reports) {
    std::string s = "identity,pass,residual,seed\n";
    for (auto &r : reports) s += csv_escape(r["identity"]) + "," + (r["pass"].get<bool>() ? "true" : "false") + "," + csv_escape(r["residual"]) + "," + std::to_string(r["seed"].get<std::uint64_t>()) + "\n";
    return s;
}

void emit(const Common &c, const json &payload, const std::string &csv) {
    std::string text = c.format == "csv" ? csv : payload.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw InputError("cannot write " + c.out);
    f << text;
}

void add_common(CLI::App *app, Common &c, bool with_k) {
    app->add_option("--n", c.n, "quaternionic dimension n (1..3)");
    if (with_k) app->add_option("--k", c.k, "spinor degree k");
    app->add_option("--group", c.group, "built-in group: rightQH, leftQH, abelian");
    app->add_option("--group-file", c.group_file, "group JSON: {\"S\":[[..]]}, {\"phi\":poly} or {\"name\",\"n\"}");
    app->add_option("--trials", c.trials, "random trials per check");
    app->add_option("--seed", c.seed, "master seed");
    app->add_option("--degree", c.degree, "max degree of random polynomials");
    app->add_option("--out", c.out, "write the result here instead of stdout");
    app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

// ---------------------------------------------------------------- classify

int cmd_classify(const Common &c) {
    GroupSpec g = load_group(c);
    auto rt = is_right_type(g);
    bool viaE = is_right_type_via_E(g);
    auto H = check_condition_H(g);
    json certs = json::array();
    for (auto &b : rt.blocks) certs.push_back(b.to_json());
    json out{{"group", g.to_json()},
             {"right_type", rt.right_type},
             {"right_type_via_E", viaE},
             {"stratified", is_stratified(g)},
             {"condition_H", H.details["verdict"]},
             {"condition_H_report", H.to_json()},
             {"block_certificates", certs},
             {"consistent", rt.right_type == viaE}};
    std::string csv = "right_type,right_type_via_E,stratified,condition_H\n" + std::string(rt.right_type ? "true" : "false") + "," + (viaE ? "true" : "false") + "," +
                      (out["stratified"].get<bool>() ? "true" : "false") + "," + H.details["verdict"].get<std::string>() + "\n";
    emit(c, out, csv);
    if (rt.right_type != viaE) {
        std::cerr << "internal inconsistency: the two right-type tests disagree\n";
        return kFail;
    }
    return kPass;
}

// ---------------------------------------------------------------- verify

int finish_reports(const Common &c, json params, const std::vector<Report> &reps, const json &notes = json::array()) {
    json arr = json::array();
    bool pass = true;
    for (auto &r : reps) {
        arr.push_back(r.to_json());
        pass = pass && r.pass;
    }
    json out{{"params", params}, {"reports", arr}, {"pass", pass}};
    if (!notes.empty()) out["notes"] = notes;
    emit(c, out, reports_csv(arr));
    return pass ? kPass : kFail;
}

int cmd_verify_flat(const Common &c, const std::string &checks) {
    check_limits(c, true);
    ComplexSpec spec(c.n, c.k);
    auto want = split(checks.empty() ? "composition,tuple,flat_d,harmonic" : checks);
    std::vector<Report> reps;
    for (auto &w : want) {
        if (w == "composition") reps.push_back(verify_flat_composition(spec, c.trials, c.seed, c.degree));
        else if (w == "tuple") reps.push_back(verify_tuple_equivalence(spec, c.trials, c.seed, c.degree));
        else if (w == "flat_d") reps.push_back(verify_flat_d(spec, c.trials, c.seed));
        else if (w == "harmonic") reps.push_back(verify_harmonic(spec, std::min(c.degree, 3)));
        else throw InputError("unknown flat check '" + w + "' (composition, tuple, flat_d, harmonic)");
    }
    return finish_reports(c, {{"complex", "flat"}, {"n", c.n}, {"k", c.k}, {"trials", c.trials}, {"seed", c.seed}, {"degree", c.degree}}, reps);
}

int cmd_verify_boundary(const Common &c, const std::string &checks) {
    check_limits(c, true);
    GroupSpec g = load_group(c);
    if (g.n() < 1) throw InputError("empty group");
    TangentFrame fr(g, degree_cap(kDefaultDegreeCap));
    BoundarySpec spec(fr, c.k);
    const bool explicit_checks = !checks.empty();
    auto want = split(explicit_checks ? checks : "frame,composition,subcomplex,anticommute,bracket,xx,hodge");
    std::vector<Report> reps;
    json notes = json::array();
    for (auto &w : want) {
        bool needs_right = w == "subcomplex" || w == "hodge" || w == "xx";
        if (needs_right && !fr.right_type()) {
            if (explicit_checks) throw PreconditionError("check '" + w + "' needs a right-type group; " + g.name() + " is not");
            notes.push_back("skipped " + w + ": group is not right-type");
            continue;
        }
        if (w == "frame") reps.push_back(verify_tangent_frame(g));
        else if (w == "composition") {
            if (fr.n() < 2) notes.push_back("composition: n = 1 has a single operator");
            reps.push_back(verify_boundary_composition(spec, c.trials, c.seed, c.degree));
        } else if (w == "subcomplex") reps.push_back(verify_subcomplex_composition(spec, c.trials, c.seed, c.degree));
        else if (w == "anticommute") reps.push_back(verify_anticommute(fr, c.trials, c.seed, c.degree));
        else if (w == "bracket") reps.push_back(bracket_identity(fr));
        else if (w == "xx") reps.push_back(verify_XX_identity(fr));
        else if (w == "hodge") {
            if (c.k < 1) notes.push_back("skipped hodge: needs k >= 1");
            else reps.push_back(hodge_diag(fr, c.k, c.trials, c.seed, c.degree));
        } else
            throw InputError("unknown boundary check '" + w + "' (frame, composition, subcomplex, anticommute, bracket, xx, hodge)");
    }
    return finish_reports(c, {{"complex", "boundary"}, {"group", g.to_json()}, {"k", c.k}, {"trials", c.trials}, {"seed", c.seed}, {"degree", c.degree}}, reps, notes);
}

// ---------------------------------------------------------------- symbol

int cmd_symbol(const Common &c, const std::string &vstr, int random_count) {
    check_limits(c, true);
    ComplexSpec spec(c.n, c.k);
    std::vector<std::vector<mpq_class>> vs;
    if (!vstr.empty()) {
        std::vector<mpq_class> v;
        for (auto &s : split(vstr)) {
            try {
                v.push_back(parse_rational(s));
            } catch (const std::exception &) {
                throw InputError("bad rational '" + s + "' in --v");
            }
        }
        if (int(v.size()) != 4 * c.n + 4) throw InputError("--v needs " + std::to_string(4 * c.n + 4) + " entries");
        bool zero = true;
        for (auto &x : v) zero = zero && sgn(x) == 0;
        if (zero) throw InputError("v must be nonzero");
        vs.push_back(v);
    }
    Sampler s(c.seed);
    for (int t = 0; t < random_count; ++t) {
        std::vector<mpq_class> v;
        bool zero = true;
        while (zero) {
            v.clear();
            for (int i = 0; i < 4 * c.n + 4; ++i) v.push_back(s.small_rational());
            for (auto &x : v) zero = zero && sgn(x) == 0;
        }
        vs.push_back(v);
    }
    if (vs.empty()) vs.push_back([&] {
            std::vector<mpq_class> e(4 * c.n + 4, mpq_class(0));
            e[0] = 1;
            return e;
        }());
    json rows = json::array();
    std::string csv = "v,level,dim,rank,exact\n";
    bool all = true;
    for (auto &v : vs) {
        auto r = exactness(spec, v);
        json vj = json::array();
        std::string vtxt;
        for (auto &x : v) {
            vj.push_back(rational_str(x));
            vtxt += (vtxt.empty() ? "" : " ") + rational_str(x);
        }
        json levels = json::array();
        for (size_t j = 0; j < r.dims.size(); ++j) {
            json l{{"level", j}, {"dim", r.dims[j]}, {"exact", bool(r.exact_at[j])}};
            if (j < r.ranks.size()) l["rank"] = r.ranks[j];
            levels.push_back(l);
            csv += csv_escape(vtxt) + "," + std::to_string(j) + "," + std::to_string(r.dims[j]) + "," + (j < r.ranks.size() ? std::to_string(r.ranks[j]) : "") + "," + (r.exact_at[j] ? "true" : "false") + "\n";
        }
        rows.push_back({{"v", vj}, {"levels", levels}, {"products_zero", r.products_zero}, {"all_exact", r.all_exact()}});
        all = all && r.all_exact() && r.products_zero;
    }
    emit(c, {{"n", c.n}, {"k", c.k}, {"seed", c.seed}, {"symbols", rows}, {"pass", all}}, csv);
    return all ? kPass : kFail;
}

// ---------------------------------------------------------------- ma

struct MaOptions {
    int power = 0, resolution = 4, jmax = 64;
    std::string u = "random", u_file, lo = "-1", hi = "1", checks;
};

int cmd_ma(const Common &c, const MaOptions &o) {
    if (c.trials < 0 || c.degree < 0) throw InputError("trials and degree must be nonnegative");
    GroupSpec g = load_group(c);
    TangentFrame fr(g, degree_cap(16));
    if (!fr.right_type()) throw PreconditionError("group " + g.name() + " is not right-type; △u = 𝔡_{0'}𝔡_{1'}u needs 𝔡_{0'}, 𝔡_{1'} to anticommute");
    const int n = fr.n(), p = o.power == 0 ? n : o.power;
    if (p < 1 || p > n) throw InputError("power must be in 1..n");
    const auto &R = fr.ring();
    Poly norm2(R);
    for (int a = 0; a < 4 * n; ++a) norm2 += Poly::var(R, a) * Poly::var(R, a);

    std::vector<Poly> us;
    Sampler s(c.seed);
    if (!o.u_file.empty()) {
        json j = read_json_file(o.u_file);
        const json &arr = j.is_array() ? j : j.at("u");
        for (auto &pj : arr) us.push_back(Poly::from_json(pj, nullptr).recast(R));
        if (us.empty()) throw InputError("u file holds no polynomials");
    } else if (o.u == "norm2") us.assign(p, norm2);
    else if (o.u == "random")
        for (int i = 0; i < p; ++i) us.push_back(random_psh_quadratic(R, n, s));
    else throw InputError("--u must be norm2 or random");
    if (int(us.size()) < p) throw InputError("need at least power functions");
    us.erase(us.begin() + p, us.end());

    Region K;
    try {
        K = Region::cube(R->size(), parse_rational(o.lo), parse_rational(o.hi), o.resolution);
    } catch (const std::invalid_argument &e) {
        throw InputError(std::string("region: ") + e.what());
    }
    Region L = K;
    for (int i = 0; i < K.dims(); ++i) {
        mpq_class mid = (K.lo[i] + K.hi[i]) / 2, q = (K.hi[i] - K.lo[i]) / 4;
        L.lo[i] = mid - q;
        L.hi[i] = mid + q;
    }

    auto want = split(o.checks.empty() ? "positivity,key,stokes,cln,convergence" : o.checks);
    std::vector<Report> reps;
    json summary;
    for (auto &w : want) {
        if (w == "positivity") {
            for (auto &u : us) reps.push_back(positivity_check(triangle(u, fr), std::max(c.trials, 1), c.seed));
        } else if (w == "key") {
            std::vector<Poly> kus = us;
            while (int(kus.size()) < n) kus.push_back(norm2);
            reps.push_back(key_identity_check(kus, fr));
        } else if (w == "stokes") {
            for (int t = 0; t < std::max(c.trials, 1); ++t) {
                Sampler ts(derive_seed(c.seed, t));
                std::vector<Poly> TA;
                for (int A = 0; A < 2 * n; ++A) TA.push_back(ts.poly(R, std::min(c.degree, 4), 3));
                auto r = stokes_check(ts.poly(R, std::min(c.degree, 4), 3), from_hat_components(TA, 2 * n), K, fr);
                r.seed = derive_seed(c.seed, t);
                reps.push_back(r);
            }
        } else if (w == "cln") {
            auto r = cln_experiment(us, fr, K, L);
            for (auto key : {"mass_direct", "mass_ibp", "sup_norms", "empirical_C"}) summary[key] = r.details[key];
            reps.push_back(r);
        } else if (w == "convergence") {
            reps.push_back(ma_convergence(us[0], fr, L, o.jmax));
        } else
            throw InputError("unknown ma check '" + w + "' (positivity, key, stokes, cln, convergence)");
    }
    Cq mass = integrate_top_exact(wedge(ma_power(us, fr), beta_power(R, n, n - p)), L);
    summary["mass_L_exact"] = json::array({rational_str(mass.re), rational_str(mass.im)});
    json params{{"group", g.to_json()}, {"power", p}, {"K", K.to_json()}, {"L", L.to_json()}, {"seed", c.seed}, {"u", json::array()}};
    for (auto &u : us) params["u"].push_back(u.str());
    json arr = json::array();
    bool pass = true;
    for (auto &r : reps) {
        arr.push_back(r.to_json());
        pass = pass && r.pass;
    }
    emit(c, {{"params", params}, {"summary", summary}, {"reports", arr}, {"pass", pass}}, reports_csv(arr));
    return pass ? kPass : kFail;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"k-Cauchy-Fueter complexes, boundary complexes on step-two groups, quaternionic Monge-Ampere"};
    app.require_subcommand(1);
    Common c;

    auto *classify = app.add_subcommand("classify", "right-type, stratified and condition (H) verdicts for a group");
    add_common(classify, c, false);

    auto *verify = app.add_subcommand("verify", "run the exact verification suites");
    verify->require_subcommand(1);
    std::string checks;
    auto *vflat = verify->add_subcommand("flat", "flat k-Cauchy-Fueter complex on H^{n+1}");
    add_common(vflat, c, true);
    vflat->add_option("--check", checks, "comma list: composition, tuple, flat_d, harmonic");
    auto *vbd = verify->add_subcommand("boundary", "boundary complex on a rigid quadratic hypersurface");
    add_common(vbd, c, true);
    vbd->add_option("--check", checks, "comma list: frame, composition, subcomplex, anticommute, bracket, xx, hodge");

    auto *symbol = app.add_subcommand("symbol", "ranks of the symbol sequence at a covector");
    add_common(symbol, c, true);
    std::string vstr;
    int random_count = 0;
    symbol->add_option("--v", vstr, "covector, comma-separated rationals (4n+4 entries)");
    symbol->add_option("--random", random_count, "also test this many random covectors");

    auto *ma = app.add_subcommand("ma", "quaternionic Monge-Ampere drivers on a right-type group");
    add_common(ma, c, false);
    MaOptions mo;
    ma->add_option("--power", mo.power, "number of factors p (default n)");
    ma->add_option("--u", mo.u, "norm2 or random (plurisubharmonic quadratics)");
    ma->add_option("--u-file", mo.u_file, "JSON list of polynomials (or {\"u\": [...]})");
    ma->add_option("--lo", mo.lo, "lower corner of the cube K");
    ma->add_option("--hi", mo.hi, "upper corner of the cube K");
    ma->add_option("--resolution", mo.resolution, "Gauss points per axis");
    ma->add_option("--jmax", mo.jmax, "terms in the convergence experiment");
    ma->add_option("--check", mo.checks, "comma list: positivity, key, stokes, cln, convergence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*classify) return cmd_classify(c);
        if (*vflat) return cmd_verify_flat(c, checks);
        if (*vbd) return cmd_verify_boundary(c, checks);
        if (*symbol) return cmd_symbol(c, vstr, random_count);
        if (*ma) return cmd_ma(c, mo);
    } catch (const PreconditionError &e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const DegreeCapError &e) {
        std::cerr << "input: " << e.what() << " (raise CFX_MAX_DEGREE)\n";
        return kInput;
    } catch (const std::invalid_argument &e) {
        std::cerr << "input: " << e.what() << "\n";
        return kInput;
    } catch (const std::out_of_range &e) {
        std::cerr << "input: " << e.what() << "\n";
        return kInput;
    } catch (const json::exception &e) {
        std::cerr << "input: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kInput;
}
