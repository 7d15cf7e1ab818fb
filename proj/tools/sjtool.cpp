// sjtool: command-line interface for the Siegel-Jacobi forms library.
//
// Exit codes: 0 ok, 1 assertion/selfcheck failure, 2 usage or precondition
// violation (with a machine-readable error object on stdout).

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "sjf/eisenstein.hpp"
#include "sjf/expansion_io.hpp"
#include "sjf/gamma.hpp"
#include "sjf/hecke.hpp"
#include "sjf/lfunction.hpp"
#include "sjf/theta.hpp"
#include "sjf/tolerances.hpp"

using namespace sjf;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string fmt15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

json cplx_json(cplx v) {
    return json{{"re", fmt15(v.real())}, {"im", fmt15(v.imag())}};
}

[[noreturn]] void usage_error(const std::string& message,
                              const std::string& condition = "") {
    json err{{"code", 2}, {"message", message}};
    if (!condition.empty()) err["violated_condition"] = condition;
    std::cout << err.dump(2) << "\n";
    std::exit(2);
}

RatMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<Rational>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<Rational> r;
        std::stringstream rs(row);
        std::string entry;
        while (std::getline(rs, entry, ',')) r.push_back(Rational::parse(entry));
        rows.push_back(std::move(r));
    }
    if (rows.empty()) usage_error("empty matrix literal");
    RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) usage_error("ragged matrix literal");
        for (size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
}

SymMatrix parse_index(const std::string& text) {
    // file path or inline "a,b;b,c"
    std::string body = text;
    if (fs::exists(text)) {
        std::ifstream is(text);
        std::getline(is, body);
    }
    RatMatrix m = parse_matrix(body);
    if (!m.is_symmetric()) usage_error("index matrix must be symmetric");
    return SymMatrix(m);
}

// "a+bi" with optional signs, "i" shorthand, plain reals
cplx parse_complex(std::string t) {
    t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
    if (t.empty()) usage_error("empty complex literal");
    if (t.back() != 'i') return cplx(std::stod(t), 0.0);
    t.pop_back();  // drop i
    // split at the last +/- that is not an exponent sign or position 0
    size_t split = std::string::npos;
    for (size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        if (t.empty() || t == "+") return cplx(0.0, 1.0);
        if (t == "-") return cplx(0.0, -1.0);
        return cplx(0.0, std::stod(t));
    }
    double re = std::stod(t.substr(0, split));
    std::string imtxt = t.substr(split);
    double im = (imtxt == "+" ? 1.0 : imtxt == "-" ? -1.0 : std::stod(imtxt));
    return cplx(re, im);
}

cplx parse_s(const std::string& t) {
    auto comma = t.find(',');
    if (comma == std::string::npos) return cplx(std::stod(t), 0.0);
    return cplx(std::stod(t.substr(0, comma)), std::stod(t.substr(comma + 1)));
}

int run_selfcheck(int trials, uint64_t seed) {
    json out;
    bool all_ok = true;
    RandomJacobi rj(seed);
    std::mt19937_64 dims(seed ^ 0x9e3779b97f4a7c15ull);

    {  // exact group suite
        bool ok = true;
        for (int t = 0; t < trials; ++t) {
            int n = 1 + static_cast<int>(dims() % 2), l = 1 + static_cast<int>(dims() % 2);
            JacobiElement x = rj.element(n, l), y = rj.element(n, l),
                          zz = rj.element(n, l);
            ok = ok && compose(compose(x, y), zz) == compose(x, compose(y, zz));
            ok = ok && compose(x, inverse(x)) == JacobiElement::identity(n, l);
            ok = ok && embed_symplectic(compose(x, y)) ==
                           embed_symplectic(x) * embed_symplectic(y);
            ok = ok && epsilon_conjugate(compose(x, y)) ==
                           compose(epsilon_conjugate(x), epsilon_conjugate(y));
        }
        out["exact_group"] = ok;
        all_ok = all_ok && ok;
    }
    {  // cocycle suite
        double worst = 0;
        for (int t = 0; t < trials; ++t) {
            int n = 1 + static_cast<int>(dims() % 2), l = 1 + static_cast<int>(dims() % 2);
            WeightIndex wi;
            wi.k = 4 + static_cast<int>(dims() % 7);
            wi.S = SymMatrix::scalar(l, Rational(1 + static_cast<long>(dims() % 2)));
            JacobiElement x = rj.element(n, l), y = rj.element(n, l);
            JacobiPoint z = rj.point(n, l);
            cplx lhs = factor_j(compose(x, y), z, wi);
            cplx rhs = factor_j(x, act(y, z), wi) * factor_j(y, z, wi);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
        }
        out["cocycle_worst_rel"] = fmt15(worst);
        bool ok = worst < tol::rel_identity;
        out["cocycle"] = ok;
        all_ok = all_ok && ok;
    }
    {  // action suite
        double worst = 0;
        for (int t = 0; t < trials; ++t) {
            int n = 1 + static_cast<int>(dims() % 2), l = 1 + static_cast<int>(dims() % 2);
            JacobiElement x = rj.element(n, l), y = rj.element(n, l);
            JacobiPoint z = rj.point(n, l);
            JacobiPoint lhs = act(compose(x, y), z), rhs = act(x, act(y, z));
            double num = (lhs.tau - rhs.tau).max_abs() + (lhs.w - rhs.w).max_abs();
            double den = std::max(1.0, lhs.tau.max_abs() + lhs.w.max_abs());
            worst = std::max(worst, num / den);
        }
        out["action_worst_rel"] = fmt15(worst);
        bool ok = worst < tol::rel_action;
        out["action"] = ok;
        all_ok = all_ok && ok;
    }
    out["ok"] = all_ok;
    std::cout << out.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

json expansion_summary(const FourierExpansion& f) {
    return json{{"n", f.degree()},
                {"l", f.index_size()},
                {"weight", (Rational(f.twice_weight()) / Rational(2)).str()},
                {"terms", f.size()},
                {"trunc", f.trunc().str()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel-Jacobi modular forms toolkit"};
    app.set_help_flag("--help", "print help");  // frees -h / --h for `theta expand`
    app.require_subcommand(1);
    int jobs = 1;
    uint64_t seed = 20240607ull;
    app.add_option("--jobs", jobs, "parallelism cap for inner loops");
    app.add_option("--seed", seed, "RNG seed for randomized suites");

    // ---- group ----
    auto* grp = app.add_subcommand("group", "group arithmetic");
    auto* selfcheck = grp->add_subcommand("selfcheck", "run property suites");
    int trials = 200;
    selfcheck->add_option("--trials", trials, "number of random trials");

    // ---- theta ----
    auto* theta = app.add_subcommand("theta", "theta series and decomposition");
    auto* texp = theta->add_subcommand("expand", "expand a theta series");
    std::string tS = "1", th = "0", tout, tlattice;
    int tn = 1;
    std::string ttrunc = "25";
    texp->add_option("--S", tS, "index matrix (inline or file)");
    texp->add_option("--h", th, "characteristic matrix");
    texp->add_option("--n", tn, "degree");
    texp->add_option("--trunc", ttrunc, "truncation bound on tr(t)");
    texp->add_option("--lattice", tlattice, "lattice basis (default M_{l,n}(Z))");
    texp->add_option("-o,--out", tout, "output file")->required();

    auto* tdec = theta->add_subcommand("decompose", "theta decomposition");
    std::string tdec_in, tdec_out;
    tdec->add_option("input", tdec_in, "expansion file")->required();
    tdec->add_option("-o,--out", tdec_out, "output directory")->required();

    auto* tasm = theta->add_subcommand("assemble", "assemble components");
    std::string tasm_in, tasm_out;
    tasm->add_option("input", tasm_in, "component directory")->required();
    tasm->add_option("-o,--out", tasm_out, "output file")->required();

    // ---- hecke ----
    auto* hk = app.add_subcommand("hecke", "Hecke double cosets and operators");
    auto* hcos = hk->add_subcommand("cosets", "coset representatives");
    int hn = 1, hl = 1;
    long hp = 2;
    std::string hxi, hlevel;
    bool hprint = false;
    hcos->add_option("--n", hn, "degree (1)");
    hcos->add_option("--l", hl, "index size");
    hcos->add_option("--p", hp, "prime");
    hcos->add_option("--xi", hxi, "p2 for the xi = p^2 coset set");
    hcos->add_option("--level", hlevel,
                     "level N (default p: Iwahori branch; 1: maximal)");
    hcos->add_flag("--reps", hprint, "print canonical representatives");

    auto* happ = hk->add_subcommand("apply", "apply T to an expansion (n = 1)");
    std::string happ_in, happ_out;
    long happ_p = 2;
    int happ_k = 10;
    std::string happ_level;
    happ->add_option("--op", happ_p, "prime p of the operator")->required();
    happ->add_option("--k", happ_k, "weight for the slash action");
    happ->add_option("--level", happ_level, "level (default: from file metadata)");
    happ->add_option("input", happ_in)->required();
    happ->add_option("-o,--out", happ_out)->required();

    // ---- lf ----
    auto* lf = app.add_subcommand("lf", "L-function local data");
    auto* lfe = lf->add_subcommand("euler", "good Euler factor from Satake data");
    std::string lf_mu = "1";
    int lf_order = 3;
    long lf_p = 2;
    lfe->add_option("--mu", lf_mu, "comma-separated rational Satake parameters");
    lfe->add_option("--order", lf_order, "series truncation order");
    lfe->add_option("--p", lf_p, "prime");

    auto* lfs = lf->add_subcommand("satake", "solve for mu and predict lambda(p^2)");
    double lf_lambda = 0;
    long lfs_p = 2;
    lfs->add_option("--lambda-p", lf_lambda, "measured lambda(p)")->required();
    lfs->add_option("--p", lfs_p, "prime");

    auto* lfg = lf->add_subcommand("gamma", "gamma-case table value");
    int lfg_n = 1;
    std::string lfg_k = "10", lfg_s = "2,0";
    lfg->add_option("--n", lfg_n);
    lfg->add_option("--k", lfg_k, "weight (rational, e.g. 11/2)");
    lfg->add_option("--s", lfg_s, "complex s as RE,IM");

    auto* lfp = lf->add_subcommand("poles", "pole sets S1, S2");
    int lfp_n = 1;
    std::string lfp_k = "10", lfp_par = "int";
    lfp->add_option("--n", lfp_n);
    lfp->add_option("--k", lfp_k);
    lfp->add_option("--parity", lfp_par, "int|half");

    auto* lfx = lf->add_subcommand("exponents", "algebraicity exponents");
    int lfx_k = 10, lfx_l = 1, lfx_n = 1, lfx_sigma = 9;
    lfx->add_option("--k", lfx_k);
    lfx->add_option("--l", lfx_l);
    lfx->add_option("--n", lfx_n);
    lfx->add_option("--sigma", lfx_sigma);

    auto* lfm = lf->add_subcommand("mplus", "M_p^+ predicate");
    std::string lfm_S = "1";
    long lfm_p = 2;
    lfm->add_option("--S", lfm_S);
    lfm->add_option("--p", lfm_p);

    // ---- eis ----
    auto* eis = app.add_subcommand("eis", "Eisenstein series");
    auto* ee = eis->add_subcommand("eval", "evaluate E(z, s)");
    int ee_k = 4, ee_B = 200;
    std::string ee_S = "1", ee_z = "2i,0", ee_s, ee_N = "1";
    ee->add_option("--k", ee_k);
    ee->add_option("--S", ee_S);
    ee->add_option("--z", ee_z, "point as tau,w1[,w2]");
    ee->add_option("--s", ee_s, "RE,IM (default k/2)");
    ee->add_option("--B", ee_B, "coset bound");
    ee->add_option("--N", ee_N, "level");

    auto* ev = eis->add_subcommand("verify-euler", "Euler-product pipeline");
    int ev_k = 6, ev_B = 200;
    long ev_p = 2;
    ev->add_option("--k", ev_k);
    ev->add_option("--p", ev_p);
    ev->add_option("--B", ev_B);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*selfcheck) return run_selfcheck(trials, seed);

        if (*texp) {
            SymMatrix A = parse_index(tS);
            int l = A.dim();
            RatMatrix h = parse_matrix(th);
            if (h.rows() != l || h.cols() != tn)
                usage_error("characteristic must be l x n", "h shape");
            ThetaSpec spec;
            if (tlattice.empty())
                spec = ThetaSpec::scaled_standard(A, tn, Rational(1), h);
            else if (tlattice.find(',') == std::string::npos &&
                     tlattice.find(';') == std::string::npos)
                spec = ThetaSpec::scaled_standard(A, tn, Rational::parse(tlattice), h);
            else {
                spec.A = A;
                spec.n = tn;
                spec.lattice = parse_matrix(tlattice);
                spec.h = h;
            }
            FourierExpansion f = theta_characteristic(spec, Rational::parse(ttrunc));
            write_expansion_file(tout, f);
            json out = expansion_summary(f);
            out["file"] = tout;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*tdec) {
            FourierExpansion f = read_expansion_file(tdec_in);
            ThetaComponents c = decompose(f);
            fs::create_directories(tdec_out);
            json manifest;
            manifest["version"] = "theta-components/v1";
            manifest["n"] = c.n;
            manifest["l"] = c.l;
            manifest["S"] = json::parse(expansion_to_json(f))["S"];
            manifest["weight"] = (Rational(c.twice_weight_total) / Rational(2)).str();
            json reps = json::array();
            for (size_t i = 0; i < c.reps.size(); ++i) {
                std::string name = "comp_" + std::to_string(i) + ".json";
                write_expansion_file((fs::path(tdec_out) / name).string(), c.comp[i]);
                json entry;
                json hmat = json::array();
                for (int r = 0; r < c.reps[i].rows(); ++r) {
                    json row = json::array();
                    for (int cc = 0; cc < c.reps[i].cols(); ++cc)
                        row.push_back(c.reps[i](r, cc).str());
                    hmat.push_back(row);
                }
                entry["h"] = hmat;
                entry["file"] = name;
                reps.push_back(entry);
            }
            manifest["components"] = reps;
            std::ofstream os(fs::path(tdec_out) / "manifest.json");
            os << manifest.dump(2) << "\n";
            json out;
            out["components"] = c.reps.size();
            json norms = json::array();
            for (const auto& comp : c.comp) norms.push_back(comp.size());
            out["component_sizes"] = norms;
            out["property_A"] = property_A_check(c);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*tasm) {
            std::ifstream is(fs::path(tasm_in) / "manifest.json");
            if (!is) usage_error("missing manifest.json in " + tasm_in);
            json manifest = json::parse(is);
            ThetaComponents c;
            c.n = manifest.at("n").get<int>();
            c.l = manifest.at("l").get<int>();
            Rational w2 = Rational::parse(manifest.at("weight").get<std::string>()) *
                          Rational(2);
            c.twice_weight_total = static_cast<int>(w2.num().get_si());
            std::vector<std::vector<std::string>> Srows;
            RatMatrix S(c.l, c.l);
            {
                const json& sj = manifest.at("S");
                for (int i = 0; i < c.l; ++i)
                    for (int j = 0; j < c.l; ++j)
                        S(i, j) = Rational::parse(sj.at(i).at(j).get<std::string>());
            }
            c.S = SymMatrix(S);
            Rational trunc(0);
            for (const auto& entry : manifest.at("components")) {
                RatMatrix h(c.l, c.n);
                for (int i = 0; i < c.l; ++i)
                    for (int j = 0; j < c.n; ++j)
                        h(i, j) = Rational::parse(
                            entry.at("h").at(i).at(j).get<std::string>());
                c.reps.push_back(h);
                FourierExpansion comp = read_expansion_file(
                    (fs::path(tasm_in) / entry.at("file").get<std::string>()).string());
                trunc = std::max(trunc, comp.trunc());
                c.comp.push_back(std::move(comp));
            }
            FourierExpansion f = assemble(c, trunc);
            write_expansion_file(tasm_out, f);
            json out = expansion_summary(f);
            out["file"] = tasm_out;
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*hcos) {
            if (hn != 1) usage_error("hecke cosets: only degree n = 1", "n == 1");
            int a = hxi == "p2" ? 2 : 1;
            Int level = hlevel.empty() ? Int(hp) : Int(hlevel);
            CosetSet cs = jacobi_coset_reps_deg1(Int(hp), a, hl, level);
            json out;
            out["source"] = cs.source;
            out["count"] = cs.size();
            out["keys_distinct"] = cs.keys_distinct();
            if (hprint) {
                json reps = json::array();
                for (const auto& r : cs.reps) reps.push_back(r.str());
                out["reps"] = reps;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*happ) {
            FourierExpansion f = read_expansion_file(happ_in);
            Int level = happ_level.empty() ? f.level_N() : Int(happ_level);
            CosetSet op = jacobi_coset_reps_deg1(Int(happ_p), 1, f.index_size(), level);
            WeightIndex wi;
            wi.k = happ_k;
            wi.S = f.index();
            FourierExpansion Tf = apply_T_expansion(
                f, op, wi, CharacterModN::trivial(Int(1)));
            write_expansion_file(happ_out, Tf);
            json out = expansion_summary(Tf);
            out["file"] = happ_out;
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*lfe) {
            std::vector<Rational> mu;
            std::stringstream ss(lf_mu);
            std::string tok;
            while (std::getline(ss, tok, ',')) mu.push_back(Rational::parse(tok));
            LocalFactor f = euler_factor_good(Int(lf_p), mu);
            json out;
            out["p"] = lf_p;
            json poly = json::array();
            for (int i = 0; i <= f.poly.degree(); ++i) poly.push_back(f.poly.coeff(i).str());
            out["poly"] = poly;
            out["palindromic"] = f.is_palindromic();
            FormalSeries rec = f.reciprocal_series(lf_order);
            json series = json::array();
            for (int i = 0; i <= rec.order(); ++i) series.push_back(rec[i].str());
            out["reciprocal_series"] = series;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*lfs) {
            SatakeSolution sol = satake_solve_and_predict(lf_lambda, Int(lfs_p));
            json out;
            out["lambda_p"] = fmt15(sol.lambda_p);
            out["mu"] = cplx_json(sol.mu);
            out["predicted_lambda_p2"] = fmt15(sol.predicted_lambda_p2);
            out["predicted_lambda_p3"] = fmt15(sol.predicted_lambda_p3);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*lfg) {
            cplx v = G_kn(parse_s(lfg_s), Rational::parse(lfg_k), lfg_n);
            json out;
            out["value"] = cplx_json(v);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*lfp) {
            Rational k = Rational::parse(lfp_k);
            if (lfp_par == "half") k += Rational(1, 2);
            else if (lfp_par != "int") usage_error("--parity must be int or half");
            PoleSets ps = pole_sets(k, lfp_n);
            json out, s1 = json::array(), s2 = json::array();
            for (const auto& v : ps.S1) s1.push_back(v.str());
            for (const auto& v : ps.S2) s2.push_back(v.str());
            out["S1"] = s1;
            out["S2"] = s2;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*lfx) {
            SigmaExponents e = exponents(lfx_k, lfx_l, lfx_n, lfx_sigma);
            json out;
            out["admissible"] = e.admissible;
            if (!e.admissible) out["violated_condition"] = e.violated;
            out["e"] = e.e.str();
            out["e_sigma"] = e.e_sigma.str();
            std::cout << out.dump(2) << "\n";
            return out.contains("violated_condition") ? 0 : 0;
        }
        if (*lfm) {
            SymMatrix S = parse_index(lfm_S);
            json out;
            out["m_plus"] = m_plus_check(S, Int(lfm_p));
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*ee) {
            EisensteinSpec spec;
            spec.k = ee_k;
            spec.S = parse_index(ee_S);
            spec.N = Int(ee_N);
            spec.chi = CharacterModN::trivial(spec.N);
            if (ee_s.empty())
                spec.set_s_default();
            else
                spec.s = parse_s(ee_s);
            spec.B_cd = ee_B;
            if (!spec.convergence_ok())
                usage_error("convergence requires Re(2s) > n + r + l + 1",
                            "Re(2s) > n+r+l+1");
            std::vector<cplx> vals;
            std::stringstream ss(ee_z);
            std::string tok;
            while (std::getline(ss, tok, ',')) vals.push_back(parse_complex(tok));
            if (vals.size() != 1 + static_cast<size_t>(spec.S.dim()))
                usage_error("--z needs tau plus l w-entries");
            JacobiPoint z;
            z.tau = CMat(1, 1);
            z.tau(0, 0) = vals[0];
            z.w = CMat(spec.S.dim(), 1);
            for (int i = 0; i < spec.S.dim(); ++i) z.w(i, 0) = vals[static_cast<size_t>(i) + 1];
            if (!point_in_domain(z)) usage_error("Im(tau) must be positive definite");
            EisResult r = eval_E(spec, z, jobs);
            json out;
            out["value"] = cplx_json(r.value);
            out["error_proxy"] = fmt15(r.error_proxy);
            out["B"] = ee_B;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*ev) {
            if (ev_k < 6 || ev_k % 2)
                usage_error("verify-euler needs even k >= 6", "k >= 6 even");
            EulerVerifyReport r = hecke_euler_verify(ev_k, Int(ev_p), ev_B, jobs);
            json out;
            out["k"] = ev_k;
            out["p"] = ev_p;
            out["B"] = ev_B;
            out["lambda_p"] = fmt15(r.lambda_p);
            out["eigen_residual_p"] = fmt15(r.residual_p);
            out["mu"] = cplx_json(r.mu);
            out["predicted_lambda_p2"] = fmt15(r.predicted_lambda_p2);
            out["measured_lambda_p2"] = fmt15(r.measured_lambda_p2);
            out["rel_gap"] = fmt15(r.rel_gap);
            json lb = json::array(), lr = json::array();
            for (double b : r.ladder_B) lb.push_back(b);
            for (double x : r.ladder_residual) lr.push_back(fmt15(x));
            out["ladder_B"] = lb;
            out["ladder_residual"] = lr;
            out["eigen_ok"] = r.eigen_ok;
            out["gap_ok"] = r.gap_ok;
            out["ladder_ok"] = r.ladder_ok;
            bool ok = r.eigen_ok && r.gap_ok && r.ladder_ok;
            out["ok"] = ok;
            std::cout << out.dump(2) << "\n";
            return ok ? 0 : 1;
        }
    } catch (const std::domain_error& e) {
        json err{{"code", 2}, {"message", e.what()}, {"violated_condition", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err{{"code", 1}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
    usage_error("no subcommand executed");
}
