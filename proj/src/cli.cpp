#include "opergr/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "opergr/errors.hpp"
#include "opergr/grassmannian.hpp"
#include "opergr/json_io.hpp"
#include "opergr/kdv.hpp"
#include "opergr/krichever.hpp"
#include "opergr/oper.hpp"
#include "opergr/parser.hpp"
#include "opergr/qfock.hpp"

namespace opergr {

namespace {

struct Config {
    int order = 12;
    int depth = -8;
    std::string window = "-8,8";
    int lo = -8;
    int hi = 8;
    int degree = 8;
    bool json = false;
    bool parallel = false;

    Json header() const
    {
        return Json{{"order", order}, {"depth", depth}, {"window", Json::array({lo, hi})}, {"degree", degree}};
    }
    std::string header_line() const
    {
        std::ostringstream os;
        os << "# order=" << order << " depth=" << depth << " window=[" << lo << "," << hi << ") degree=" << degree;
        return os.str();
    }
    ParseOptions parse_options() const
    {
        ParseOptions p;
        p.order = order;
        p.floor = depth;
        return p;
    }
};

std::pair<int, int> int_pair(const std::string &text, const char *what)
{
    auto comma = text.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            int d = std::stoi(text, &used);
            if (used != text.size() || d < 0) {
                throw std::invalid_argument(text);
            }
            return {-d, d};
        }
        std::string a = text.substr(0, comma);
        std::string b = text.substr(comma + 1);
        int x = std::stoi(a, &used);
        if (used != a.size()) {
            throw std::invalid_argument(text);
        }
        int y = std::stoi(b, &used);
        if (used != b.size()) {
            throw std::invalid_argument(text);
        }
        return {x, y};
    } catch (const std::exception &) {
        throw InputError(std::string("bad ") + what + " '" + text + "'");
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json load_json(const std::string &path)
{
    std::string text = read_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        int line = 1;
        int col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, path + ": invalid JSON");
    }
}

bool is_file(const std::string &s)
{
    std::error_code ec;
    return std::filesystem::is_regular_file(s, ec);
}

PsiDO operator_arg(const std::string &text_or_path, const Config &cfg)
{
    std::string text = is_file(text_or_path) ? read_file(text_or_path) : text_or_path;
    return parse_operator(text, cfg.parse_options());
}

/// A ScalarOper from an oper JSON file or from operator text; `exact` reports
/// whether the coefficients are exact polynomials.
ScalarOper oper_arg(const std::string &text_or_path, const Config &cfg, bool &exact)
{
    if (is_file(text_or_path) && text_or_path.ends_with(".json")) {
        exact = true;
        return scalar_oper_from_json(load_json(text_or_path), cfg.order, exact);
    }
    PsiDO l = operator_arg(text_or_path, cfg);
    auto top = l.top();
    if (!top || *top < 1) {
        throw NotMonic("the operator must have positive order");
    }
    exact = true;
    return ScalarOper::from_psido(l, *top);
}

/// The default operator for the flow commands: d^n - t (so q_n = t, the rest zero).
ScalarOper default_oper(int n, const Config &cfg)
{
    ScalarOper s;
    s.n = n;
    for (int i = 1; i <= n; ++i) {
        s.q.push_back(i == n ? Series::monomial(Rational(1), 1, cfg.order) : Series(cfg.order));
    }
    return s;
}

void emit(std::ostream &out, const Config &cfg, Json doc, const std::function<void()> &text)
{
    if (cfg.json) {
        Json full{{"config", cfg.header()}};
        for (auto &[k, v] : doc.items()) {
            full[k] = v;
        }
        out << full.dump(2) << "\n";
    } else {
        out << cfg.header_line() << "\n";
        text();
    }
}

const char *pass(bool ok)
{
    return ok ? "PASS" : "FAIL";
}

int cmd_miura(const Config &cfg, const std::string &file, std::ostream &out)
{
    bool exact = true;
    MiuraOper m = miura_oper_from_json(load_json(file), cfg.order, exact);
    ScalarOper s = miura_transform(m);
    emit(out, cfg, scalar_oper_to_json(s), [&] {
        for (std::size_t i = 0; i < s.q.size(); ++i) {
            out << "q" << i + 1 << " = " << s.q[i].str() << "\n";
        }
    });
    return kExitOk;
}

int cmd_root(const Config &cfg, int n, const std::string &expr, std::ostream &out)
{
    PsiDO l = operator_arg(expr, cfg);
    PsiDO root = pdo_nth_root(l, n);
    PsiDO back = pdo_power(root, n);
    // The root is trusted down to its depth, so its n-th power is trusted down to depth + n - 1.
    int trusted = root.exact_tail() ? root.floor() : root.depth() + n - 1;
    bool ok = agrees(back.cut_below(trusted), l.cut_below(trusted));
    Json doc{{"n", n}, {"input", print_operator(l)}, {"root", psido_to_json(root)},
             {"square_back", Json{{"power", n}, {"checked_down_to", trusted}, {"agrees", ok}}}};
    emit(out, cfg, doc, [&] {
        out << "L^(1/" << n << ") = " << print_operator(root) << "\n";
        out << "trusted depth: " << root.trusted_depth() << "\n";
        out << "power-back check through d^" << trusted << ": " << pass(ok) << "\n";
    });
    return ok ? kExitOk : kExitInternal;
}

int cmd_kdv_flow(const Config &cfg, int n, int r, const std::string &input, std::ostream &out)
{
    bool exact = false;
    ScalarOper s = input.empty() ? default_oper(n, cfg) : oper_arg(input, cfg, exact);
    if (!input.empty() && s.n != n) {
        throw BadArgument("--n " + std::to_string(n) + " does not match the operator order " + std::to_string(s.n));
    }
    LaxFlow f = lax_rhs(s, r, cfg.depth);
    Json dq = Json::array();
    for (const Series &x : f.dq) {
        dq.push_back(series_to_json(x));
    }
    Json doc{{"n", s.n}, {"r", r}, {"oper", scalar_oper_to_json(s)}, {"dq", dq}, {"trusted_depth", f.trusted_depth}};
    emit(out, cfg, doc, [&] {
        for (std::size_t i = 0; i < f.dq.size(); ++i) {
            out << "dq" << i + 1 << "/dt" << r << " = " << f.dq[i].str() << "\n";
        }
    });
    return kExitOk;
}

int cmd_kdv_conserved(const Config &cfg, int n, int count, const std::string &input, std::ostream &out)
{
    bool exact = false;
    ScalarOper s = input.empty() ? default_oper(n, cfg) : oper_arg(input, cfg, exact);
    Json dens = Json::array();
    std::vector<Series> list;
    for (int k = 1; k <= count; ++k) {
        list.push_back(conserved_density(s, k, cfg.depth));
        dens.push_back(Json{{"k", k}, {"density", series_to_json(list.back())}});
    }
    emit(out, cfg, Json{{"n", s.n}, {"densities", dens}}, [&] {
        for (std::size_t k = 0; k < list.size(); ++k) {
            out << "res L^(" << k + 1 << "/" << s.n << ") = " << list[k].str() << "\n";
        }
    });
    return kExitOk;
}

int cmd_tau(const Config &cfg, const std::string &frame_file, std::ostream &out)
{
    GrassPoint w = grass_window(frame_from_json(load_json(frame_file), cfg.lo, cfg.hi), cfg.lo, cfg.hi);
    TimesSeries tau = tau_schur(w, cfg.degree);
    bool agree = tau.agrees(tau_correlator(w, cfg.degree));
    Json doc{{"point", grass_to_json(w)}, {"tau", times_to_json(tau)}, {"correlator_agrees", agree}};
    emit(out, cfg, doc, [&] {
        out << "virtdim = " << w.virtdim << "\n";
        out << "tau = " << tau.str() << "\n";
        out << "determinant form agrees: " << pass(agree) << "\n";
    });
    return agree ? kExitOk : kExitInternal;
}

int cmd_hirota(const Config &cfg, const std::string &frame_file, const std::string &tau_file, std::ostream &out)
{
    if (frame_file.empty() == tau_file.empty()) {
        throw InputError("give exactly one of --frame or --tau");
    }
    TimesSeries tau;
    if (!frame_file.empty()) {
        GrassPoint w = grass_window(frame_from_json(load_json(frame_file), cfg.lo, cfg.hi), cfg.lo, cfg.hi);
        tau = tau_schur(w, cfg.degree);
    } else {
        tau = times_from_json(load_json(tau_file));
        if (tau.two_sided()) {
            tau = tau.restrict_primed_to_zero();
        }
    }
    TimesSeries res = hirota_residual(tau);
    bool zero = res.is_zero();
    Json doc{{"tau_bound", tau.bound()}, {"residual_bound", res.bound()}, {"residual_zero", zero},
             {"residual", times_to_json(res)}};
    emit(out, cfg, doc, [&] {
        out << "KP Hirota residual through degree " << res.bound() << ": " << (zero ? "zero" : res.str()) << "\n";
        out << pass(zero) << "\n";
    });
    return kExitOk;
}

int cmd_toda(const Config &cfg, const std::string &pairs_file, int cutoff, std::ostream &out)
{
    std::vector<TodaPair> pairs = pairs_from_json(load_json(pairs_file), cutoff);
    TimesSeries tau = toda_tau(pairs, cfg.degree, cutoff);
    TimesSeries res = hirota_residual(tau.restrict_primed_to_zero());
    Json kernels = Json::array();
    for (const TodaPair &p : pairs) {
        kernels.push_back(Json{{"p", rational_string(p.p)},
                               {"q", rational_string(p.q)},
                               {"kernel", rational_string(toda_kernel(p.p, p.q, cutoff))}});
    }
    Json doc{{"cutoff", cutoff}, {"kernels", kernels}, {"tau", times_to_json(tau)},
             {"hirota_at_t_prime_zero", res.is_zero()}};
    emit(out, cfg, doc, [&] {
        out << "tau = " << tau.str() << "\n";
        out << "KP Hirota at t'=0: " << pass(res.is_zero()) << "\n";
    });
    return kExitOk;
}

long binomial(long n, long k)
{
    if (k < 0 || k > n) {
        return 0;
    }
    long r = 1;
    for (long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

int cmd_hecke(const Config &cfg, int n, int N, const std::string &zrange, bool wedge, std::ostream &out)
{
    auto [lo, hi] = int_pair(zrange, "--zrange");
    if (n < 1 || N < 1 || lo > hi) {
        throw BadArgument("need n >= 1, N >= 1 and a nonempty z-range");
    }
    TensorWindow w{n, N, lo, hi};
    std::vector<RelationCheck> checks = hecke_verify(w);
    bool ok = true;
    Json rows = Json::array();
    for (const RelationCheck &c : checks) {
        ok = ok && c.passed;
        rows.push_back(Json{{"relation", c.name}, {"checked", c.checked}, {"passed", c.passed}});
    }
    Json doc{{"n", n}, {"N", N}, {"zrange", Json::array({lo, hi})}, {"relations", rows}};
    std::optional<QWedge> q;
    long expected = binomial(w.factor_dim(), N);
    if (wedge) {
        q.emplace(w);
        ok = ok && static_cast<long>(q->quotient_dim()) == expected;
        doc["wedge"] = Json{{"tensor_dim", q->tensor_dim()}, {"quotient_dim", q->quotient_dim()},
                            {"expected", expected}};
    }
    doc["all_passed"] = ok;
    emit(out, cfg, doc, [&] {
        for (const RelationCheck &c : checks) {
            out << pass(c.passed) << "  " << c.name << "  (" << c.checked << " basis vectors)\n";
        }
        if (q) {
            out << pass(static_cast<long>(q->quotient_dim()) == expected) << "  q-wedge dimension "
                << q->quotient_dim() << " = C(" << w.factor_dim() << "," << N << ")\n";
        }
    });
    return ok ? kExitOk : kExitInternal;
}

int cmd_bc(const Config &cfg, const std::string &p_arg, const std::string &q_arg, int bound, std::ostream &out)
{
    PsiDO p = operator_arg(p_arg, cfg);
    PsiDO q = operator_arg(q_arg, cfg);
    std::optional<SpectralRelation> f = bc_relation(p, q, bound);
    Json doc{{"P", print_operator(p)}, {"Q", print_operator(q)}, {"bound", bound}, {"found", f.has_value()}};
    bool verified = false;
    if (f) {
        verified = evaluate_relation(*f, p, q).is_zero();
        Json coeffs = Json::array();
        for (const auto &[ab, c] : f->coeffs) {
            coeffs.push_back(Json{{"x", ab.first}, {"y", ab.second}, {"coef", rational_string(c)}});
        }
        doc["relation"] = f->str();
        doc["coeffs"] = coeffs;
        doc["verified"] = verified;
    }
    emit(out, cfg, doc, [&] {
        if (!f) {
            out << "no relation of weight <= " << bound << "\n";
            return;
        }
        out << "F(x, y) = " << f->str() << "\n";
        out << "F(P, Q) = 0: " << pass(verified) << "\n";
    });
    return !f || verified ? kExitOk : kExitInternal;
}

int cmd_krichever(const Config &cfg, const std::string &input, std::ostream &out)
{
    bool exact = false;
    ScalarOper s = oper_arg(input, cfg, exact);
    KricheverOptions opt{cfg.lo, cfg.hi, exact};
    GrassPoint w = krichever_point(s, opt);
    bool stable = shift_contained(w, s.n);
    bool ok = w.virtdim == 0 && stable;
    Json doc{{"n", s.n}, {"exact_input", exact}, {"point", grass_to_json(w)}, {"virtdim_zero", w.virtdim == 0},
             {"zn_stable", stable}};
    emit(out, cfg, doc, [&] {
        out << "virtdim = " << w.virtdim << "\n";
        out << "z^" << s.n << " W inside W: " << pass(stable) << "\n";
        for (std::size_t c = 0; c < w.columns.size(); ++c) {
            out << "  column " << c << ":";
            for (int e = w.hi - 1; e >= w.lo; --e) {
                if (!w.at(c, e).is_zero()) {
                    out << " " << w.at(c, e) << "*z^" << e;
                }
            }
            out << "\n";
        }
    });
    return ok ? kExitOk : kExitInternal;
}

int cmd_main_check(const Config &cfg, const std::string &file, std::ostream &out)
{
    bool exact = true;
    MiuraOper m = miura_oper_from_json(load_json(file), cfg.order, exact);
    KricheverOptions opt{cfg.lo, cfg.hi, exact};
    MainCheckReport r = main_theorem_check(m, opt, cfg.degree, cfg.parallel);
    Json checks{{"round_trip", r.round_trip},
                {"hirota", r.hirota},
                {"reduction", r.reduction},
                {"annihilators", r.annihilators},
                {"flag_valid", r.flag_valid}};
    Json doc{{"n", m.n},
             {"exact_input", exact},
             {"order_used", r.order},
             {"checks", checks},
             {"grass_annihilators", r.grass_annihilators},
             {"flag_annihilators", r.flag_annihilators},
             {"all_passed", r.all()}};
    emit(out, cfg, doc, [&] {
        out << "order used: " << r.order << "\n";
        out << pass(r.round_trip) << "  (a) flag -> Grassmannian -> oper round trip\n";
        out << pass(r.hirota) << "  (b) KP Hirota for the image tau\n";
        out << pass(r.reduction) << "  (c) " << m.n << "-reduction\n";
        out << pass(r.annihilators) << "  (d) annihilators agree (" << r.grass_annihilators << " vs "
            << r.flag_annihilators << ")\n";
        out << pass(r.flag_valid) << "  flag invariants\n";
    });
    return r.all() ? kExitOk : kExitInternal;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact computations with pseudodifferential operators, opers and Sato Grassmannian windows",
                 "opergr"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--order", cfg.order, "series truncation order")->capture_default_str();
    app.add_option("--depth", cfg.depth, "lowest power of d kept in operator tails")->capture_default_str();
    app.add_option("--window", cfg.window, "Grassmannian window lo,hi (exponents of z)")->capture_default_str();
    app.add_option("--degree", cfg.degree, "weighted degree bound for tau functions")->capture_default_str();
    app.add_flag("--json", cfg.json, "machine-readable JSON output");
    app.add_flag("--parallel", cfg.parallel, "run independent sub-checks concurrently");

    std::function<int()> action;

    std::string miura_file;
    auto *miura = app.add_subcommand("miura", "Miura oper JSON -> scalar oper JSON");
    miura->add_option("file", miura_file, "MiuraOper JSON")->required();
    miura->callback([&] { action = [&] { return cmd_miura(cfg, miura_file, out); }; });

    int flow_n = 2;
    int flow_r = 3;
    std::string flow_input;
    auto *flow = app.add_subcommand("kdv-flow", "Lax flow dq_i/dt_r = coefficients of [(L^{r/n})_+, L]");
    flow->add_option("--n", flow_n, "operator order")->capture_default_str();
    flow->add_option("--r", flow_r, "flow index")->capture_default_str();
    flow->add_option("input", flow_input, "operator text, operator file or ScalarOper JSON (default d^n - t)");
    flow->callback([&] { action = [&] { return cmd_kdv_flow(cfg, flow_n, flow_r, flow_input, out); }; });

    int cons_n = 2;
    int cons_s = 3;
    std::string cons_input;
    auto *cons = app.add_subcommand("kdv-conserved", "densities res L^{k/n} for k = 1..s");
    cons->add_option("--n", cons_n, "operator order for the default operator")->capture_default_str();
    cons->add_option("--s", cons_s, "number of densities")->capture_default_str();
    cons->add_option("input", cons_input, "operator text, operator file or ScalarOper JSON (default d^n - t)");
    cons->callback([&] { action = [&] { return cmd_kdv_conserved(cfg, cons_n, cons_s, cons_input, out); }; });

    int root_n = 2;
    std::string root_expr;
    auto *root = app.add_subcommand("root", "n-th root of a monic operator, with a power-back check");
    root->add_option("--n", root_n, "root degree")->required();
    root->add_option("expr", root_expr, "operator text or file")->required();
    root->callback([&] { action = [&] { return cmd_root(cfg, root_n, root_expr, out); }; });

    std::string tau_frame;
    auto *tau = app.add_subcommand("tau", "tau function of a Grassmannian frame");
    tau->add_option("--frame", tau_frame, "frame JSON")->required();
    tau->callback([&] { action = [&] { return cmd_tau(cfg, tau_frame, out); }; });

    std::string hir_frame;
    std::string hir_tau;
    auto *hir = app.add_subcommand("hirota-check", "KP Hirota residual of a tau function");
    hir->add_option("--frame", hir_frame, "frame JSON");
    hir->add_option("--tau", hir_tau, "tau JSON (TimesSeries)");
    hir->callback([&] { action = [&] { return cmd_hirota(cfg, hir_frame, hir_tau, out); }; });

    std::string toda_pairs;
    int toda_cutoff = 12;
    auto *toda = app.add_subcommand("toda-tau", "two-sided Toda tau from (a, p, q) pairs");
    toda->add_option("--pairs", toda_pairs, "pairs JSON")->required();
    toda->add_option("--cutoff", toda_cutoff, "kernel mode cutoff (overridden by the file)")->capture_default_str();
    toda->callback([&] { action = [&] { return cmd_toda(cfg, toda_pairs, toda_cutoff, out); }; });

    int hecke_n = 2;
    int hecke_N = 3;
    std::string hecke_z = "2";
    bool hecke_wedge = false;
    auto *hecke = app.add_subcommand("hecke-verify", "affine Hecke relations on a truncated tensor window");
    hecke->add_option("--n", hecke_n, "dimension of V")->capture_default_str();
    hecke->add_option("--N", hecke_N, "tensor power")->capture_default_str();
    hecke->add_option("--zrange", hecke_z, "z-exponent range: d for [-d,d], or lo,hi")->capture_default_str();
    hecke->add_flag("--wedge", hecke_wedge, "also compute the q-wedge quotient dimension");
    hecke->callback([&] { action = [&] { return cmd_hecke(cfg, hecke_n, hecke_N, hecke_z, hecke_wedge, out); }; });

    std::string bc_p;
    std::string bc_q;
    int bc_bound = 12;
    auto *bc = app.add_subcommand("bc-curve", "polynomial relation between commuting operators");
    bc->add_option("--p", bc_p, "operator text or file")->required();
    bc->add_option("--q", bc_q, "operator text or file")->required();
    bc->add_option("--bound", bc_bound, "weight bound")->capture_default_str();
    bc->callback([&] { action = [&] { return cmd_bc(cfg, bc_p, bc_q, bc_bound, out); }; });

    std::string kr_oper;
    auto *kr = app.add_subcommand("krichever", "Grassmannian point of a scalar operator");
    kr->add_option("--oper", kr_oper, "ScalarOper JSON, operator text or file")->required();
    kr->callback([&] { action = [&] { return cmd_krichever(cfg, kr_oper, out); }; });

    std::string mc_file;
    auto *mc = app.add_subcommand("main-check", "Miura oper -> flag -> Grassmannian checks");
    mc->add_option("--miura", mc_file, "MiuraOper JSON")->required();
    mc->callback([&] { action = [&] { return cmd_main_check(cfg, mc_file, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        auto [lo, hi] = int_pair(cfg.window, "--window");
        if (cfg.window.find(',') == std::string::npos || lo >= hi || lo > 0 || hi < 0) {
            throw InputError("--window needs lo,hi with lo <= 0 <= hi and lo < hi");
        }
        cfg.lo = lo;
        cfg.hi = hi;
        if (cfg.order < 1 || cfg.degree < 0 || cfg.depth > 0) {
            throw InputError("need --order >= 1, --degree >= 0 and --depth <= 0");
        }
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        return action();
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception &e) {
        err << "error: malformed input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError &e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace opergr
