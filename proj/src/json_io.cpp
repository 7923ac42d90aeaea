#include "opergr/json_io.hpp"

#include <algorithm>
#include <string>

#include "opergr/errors.hpp"
#include "opergr/parser.hpp"

namespace opergr {

namespace {

InputError schema_error(const std::string &what)
{
    return InputError(what);
}

const Json &field(const Json &j, const char *name)
{
    if (!j.is_object() || !j.contains(name)) {
        throw schema_error(std::string("missing field \"") + name + "\"");
    }
    return j.at(name);
}

int int_field(const Json &j, const char *name)
{
    const Json &v = field(j, name);
    if (!v.is_number_integer()) {
        throw schema_error(std::string("field \"") + name + "\" must be an integer");
    }
    return v.get<int>();
}

} // namespace

Json rational_pair(const Rational &r)
{
    return Json::array({r.num_str(), r.den_str()});
}

Json rational_string(const Rational &r)
{
    return r.str();
}

Rational rational_from(const Json &j)
{
    try {
        if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
            return Rational::from_parts(j[0].get<std::string>(), j[1].get<std::string>());
        }
        if (j.is_string()) {
            return Rational::parse(j.get<std::string>());
        }
        if (j.is_number_integer()) {
            return Rational(j.get<long>());
        }
    } catch (const BadArgument &) {
        throw schema_error("bad rational " + j.dump());
    }
    throw schema_error("bad rational " + j.dump());
}

Json series_to_json(const Series &s)
{
    Json coeffs = Json::array();
    for (const Rational &c : s.coeffs()) {
        coeffs.push_back(rational_pair(c));
    }
    return Json{{"pole", s.pole()}, {"order", s.order()}, {"coeffs", coeffs}};
}

Series series_from_json(const Json &j, int default_order, bool &exact)
{
    int pole = j.is_object() && j.contains("pole") ? int_field(j, "pole") : 0;
    const Json &cs = field(j, "coeffs");
    if (!cs.is_array()) {
        throw schema_error("\"coeffs\" must be an array");
    }
    std::vector<Rational> coeffs;
    for (const Json &c : cs) {
        coeffs.push_back(rational_from(c));
    }
    int order;
    if (j.contains("order")) {
        order = int_field(j, "order");
        exact = false;
        if (order < pole) {
            throw schema_error("order below pole");
        }
        coeffs.resize(static_cast<std::size_t>(order - pole));
    } else {
        order = std::max(default_order, pole + static_cast<int>(coeffs.size()));
    }
    return Series(pole, std::move(coeffs), order, std::min(-16, pole));
}

Json times_to_json(const TimesSeries &t)
{
    Json terms = Json::array();
    for (const auto &[e, c] : t.terms()) {
        Json exps = Json::object();
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] != 0) {
                exps[t.var_name(static_cast<int>(v))] = e[v];
            }
        }
        terms.push_back(Json{{"exps", exps}, {"coef", rational_pair(c)}});
    }
    return Json{{"bound", t.bound()}, {"times", t.times()}, {"terms", terms}};
}

TimesSeries times_from_json(const Json &j)
{
    int bound = int_field(j, "bound");
    const Json &terms = field(j, "terms");
    struct Entry {
        std::vector<std::pair<int, int>> vars; // (index, exponent); primed times shifted by bound
        Rational c;
    };
    std::vector<Entry> entries;
    bool two_sided = false;
    for (const Json &term : terms) {
        Entry e;
        for (const auto &[name, exp] : field(term, "exps").items()) {
            bool primed = name.size() > 2 && name.compare(0, 2, "t'") == 0;
            std::size_t start = primed ? 2 : 1;
            if (name.empty() || name[0] != 't' || name.size() <= start) {
                throw schema_error("bad time variable \"" + name + "\"");
            }
            int k = 0;
            try {
                k = std::stoi(name.substr(start));
            } catch (const std::exception &) {
                throw schema_error("bad time variable \"" + name + "\"");
            }
            if (k < 1 || k > bound || !exp.is_number_integer() || exp.get<int>() < 0) {
                throw schema_error("bad exponent for \"" + name + "\"");
            }
            two_sided = two_sided || primed;
            e.vars.emplace_back(primed ? bound + k - 1 : k - 1, exp.get<int>());
        }
        e.c = rational_from(field(term, "coef"));
        entries.push_back(std::move(e));
    }
    int times = j.contains("times") ? int_field(j, "times") : std::max(bound, 1);
    for (const Entry &e : entries) {
        for (auto [v, p] : e.vars) {
            if ((v >= bound ? v - bound : v) >= times) {
                throw schema_error("time index beyond \"times\"");
            }
        }
    }
    TimesSeries out(times, bound, two_sided);
    for (const Entry &e : entries) {
        TimesSeries::Exponents ex(static_cast<std::size_t>(out.variable_count()), 0);
        for (auto [v, p] : e.vars) {
            int idx = v >= bound ? times + (v - bound) : v;
            ex[static_cast<std::size_t>(idx)] += p;
        }
        if (out.weight(ex) <= bound) {
            out.add_term(ex, e.c);
        }
    }
    return out;
}

Json scalar_oper_to_json(const ScalarOper &s)
{
    Json q = Json::array();
    for (const Series &x : s.q) {
        q.push_back(series_to_json(x));
    }
    return Json{{"n", s.n}, {"q", q}};
}

namespace {

std::vector<Series> series_list(const Json &j, const char *name, int n, int default_order, bool &exact)
{
    const Json &list = field(j, name);
    if (!list.is_array() || static_cast<int>(list.size()) != n) {
        throw schema_error(std::string("\"") + name + "\" must hold n series");
    }
    std::vector<Series> out;
    for (const Json &s : list) {
        out.push_back(series_from_json(s, default_order, exact));
    }
    // One common truncation order keeps later arithmetic honest.
    int order = out.empty() ? default_order : out.front().order();
    for (const Series &s : out) {
        order = exact ? std::max(order, s.order()) : std::min(order, s.order());
    }
    for (Series &s : out) {
        s = exact ? Series(s.pole(), std::vector<Rational>(s.coeffs().begin(), s.coeffs().end()), order,
                           s.pole_floor())
                  : s.truncated(order);
    }
    return out;
}

int positive_n(const Json &j)
{
    int n = int_field(j, "n");
    if (n < 1) {
        throw schema_error("n must be positive");
    }
    return n;
}

} // namespace

ScalarOper scalar_oper_from_json(const Json &j, int default_order, bool &exact)
{
    ScalarOper s;
    s.n = positive_n(j);
    s.q = series_list(j, "q", s.n, default_order, exact);
    return s;
}

Json miura_oper_to_json(const MiuraOper &m)
{
    Json chi = Json::array();
    for (const Series &x : m.chi) {
        chi.push_back(series_to_json(x));
    }
    return Json{{"n", m.n}, {"chi", chi}};
}

MiuraOper miura_oper_from_json(const Json &j, int default_order, bool &exact)
{
    MiuraOper m;
    m.n = positive_n(j);
    m.chi = series_list(j, "chi", m.n, default_order, exact);
    return m;
}

Json psido_to_json(const PsiDO &a)
{
    Json terms = Json::array();
    for (const auto &[i, c] : a.terms()) {
        if (!c.is_zero()) {
            terms.push_back(Json{{"d", i}, {"coeff", series_to_json(c)}});
        }
    }
    Json depth = a.exact_tail() ? Json("exact") : Json(a.depth());
    return Json{{"floor", a.floor()}, {"depth", depth}, {"terms", terms}, {"text", print_operator(a)}};
}

Json grass_to_json(const GrassPoint &w)
{
    Json cols = Json::array();
    for (std::size_t c = 0; c < w.columns.size(); ++c) {
        Json col = Json::array();
        for (int e = w.hi - 1; e >= w.lo; --e) {
            Rational v = w.at(c, e);
            if (!v.is_zero()) {
                col.push_back(Json::array({e, rational_string(v)}));
            }
        }
        cols.push_back(col);
    }
    return Json{{"window", Json::array({w.lo, w.hi})}, {"virtdim", w.virtdim}, {"columns", cols}};
}

std::vector<std::vector<Rational>> frame_from_json(const Json &j, int lo, int hi)
{
    const Json &cols = field(j, "columns");
    if (!cols.is_array()) {
        throw schema_error("\"columns\" must be an array");
    }
    std::size_t size = static_cast<std::size_t>(hi - lo);
    std::vector<std::vector<Rational>> frame;
    int top = lo - 1;
    for (const Json &col : cols) {
        std::vector<Rational> v(size);
        for (const Json &entry : col) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer()) {
                throw schema_error("column entries are [exponent, coefficient]");
            }
            int e = entry[0].get<int>();
            if (e < lo || e >= hi) {
                throw WindowOverflow("exponent " + std::to_string(e) + " outside the window");
            }
            v[static_cast<std::size_t>(e - lo)] += rational_from(entry[1]);
            top = std::max(top, e);
        }
        frame.push_back(std::move(v));
    }
    bool complete = !j.contains("complete") || j.at("complete").get<bool>();
    if (complete) {
        for (int e = top + 1; e < hi; ++e) {
            std::vector<Rational> v(size);
            v[static_cast<std::size_t>(e - lo)] = Rational(1);
            frame.push_back(std::move(v));
        }
    }
    return frame;
}

std::vector<TodaPair> pairs_from_json(const Json &j, int &cutoff)
{
    if (j.contains("cutoff")) {
        cutoff = int_field(j, "cutoff");
    }
    std::vector<TodaPair> out;
    for (const Json &p : field(j, "pairs")) {
        out.push_back(TodaPair{rational_from(field(p, "a")), rational_from(field(p, "p")), rational_from(field(p, "q"))});
    }
    return out;
}

} // namespace opergr
