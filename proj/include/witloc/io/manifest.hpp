#ifndef WITLOC_IO_MANIFEST_HPP
#define WITLOC_IO_MANIFEST_HPP

// Manifest documents (JSON) describing a lattice, an optional argument choice, a cohomology
// ring with its integral table, and tangent Pontryagin data. Needs nlohmann/json.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <witloc/cohom.hpp>
#include <witloc/genus.hpp>
#include <witloc/lattice.hpp>

namespace witloc::io
{

using json = nlohmann::json;

class ManifestError : public std::runtime_error
{
public:
    ManifestError(const std::string &source, int line, const std::string &pointer, const std::string &what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + (pointer.empty() ? "" : pointer + ": ")
                             + what),
          line_(line)
    {
    }
    int line() const
    {
        return line_;
    }

private:
    int line_;
};

// Maps every JSON pointer in a syntactically valid document to the line where its value starts.
inline std::map<std::string, int> json_pointer_lines(const std::string &text)
{
    struct Frame {
        bool is_array;
        std::string base;
        std::size_t index;
        std::string key;
    };
    std::map<std::string, int> lines;
    std::vector<Frame> stack;
    int line = 1;
    std::size_t i = 0;
    bool expecting_key = false;

    const auto escape = [](const std::string &k) {
        std::string out;
        for (char c : k) {
            if (c == '~') {
                out += "~0";
            } else if (c == '/') {
                out += "~1";
            } else {
                out += c;
            }
        }
        return out;
    };
    const auto current_pointer = [&]() -> std::string {
        if (stack.empty()) {
            return "";
        }
        const Frame &f = stack.back();
        return f.base + "/" + (f.is_array ? std::to_string(f.index) : escape(f.key));
    };
    const auto read_string = [&]() {
        std::string s;
        ++i; // opening quote
        while (i < text.size() && text[i] != '"') {
            if (text[i] == '\\' && i + 1 < text.size()) {
                s += text[i + 1];
                i += 2;
                continue;
            }
            s += text[i++];
        }
        ++i; // closing quote
        return s;
    };

    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c)) || c == ':') {
            ++i;
        } else if (c == ',') {
            if (!stack.empty()) {
                if (stack.back().is_array) {
                    ++stack.back().index;
                } else {
                    expecting_key = true;
                }
            }
            ++i;
        } else if (c == '{' || c == '[') {
            const std::string here = current_pointer();
            lines.emplace(here, line);
            stack.push_back({c == '[', here, 0, {}});
            expecting_key = (c == '{');
            ++i;
        } else if (c == '}' || c == ']') {
            stack.pop_back();
            expecting_key = false;
            ++i;
        } else if (c == '"' && expecting_key) {
            stack.back().key = read_string();
            expecting_key = false;
        } else {
            lines.emplace(current_pointer(), line);
            if (c == '"') {
                read_string();
            } else {
                while (i < text.size() && text[i] != ',' && text[i] != '}' && text[i] != ']'
                       && !std::isspace(static_cast<unsigned char>(text[i]))) {
                    ++i;
                }
            }
        }
    }
    return lines;
}

// Parses "2*x^2*y - 1/3*p + 4" over the ring's generators; every term must have degree `degree`
// unless degree < 0.
inline CohomClass<Rational> parse_polynomial(const std::string &text, const RingPtr &ring, int degree = -1)
{
    CohomClass<Rational> result(ring);
    std::size_t i = 0;
    const auto skip = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
    };
    const auto fail = [&](const std::string &why) {
        throw std::invalid_argument("polynomial '" + text + "': " + why);
    };
    skip();
    if (i == text.size()) {
        fail("empty expression");
    }
    bool first = true;
    while (true) {
        skip();
        if (i == text.size()) {
            break;
        }
        int sign = 1;
        bool saw_sign = false;
        while (i < text.size() && (text[i] == '+' || text[i] == '-' || std::isspace(static_cast<unsigned char>(text[i])))) {
            if (text[i] == '-') {
                sign = -sign;
            }
            if (text[i] != ' ') {
                saw_sign = true;
            }
            ++i;
        }
        if (!first && !saw_sign) {
            fail("expected '+' or '-' between terms");
        }
        first = false;
        Rational coeff = sign;
        Monomial mono(ring->generators().size(), 0);
        bool any_factor = false;
        while (true) {
            skip();
            if (i == text.size()) {
                fail("dangling operator");
            }
            if (std::isdigit(static_cast<unsigned char>(text[i]))) {
                const std::size_t start = i;
                while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) {
                    ++i;
                }
                coeff *= parse_rational(text.substr(start, i - start));
            } else if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
                const std::size_t start = i;
                while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                    ++i;
                }
                const std::string name = text.substr(start, i - start);
                const auto idx = ring->generator_index(name);
                if (!idx) {
                    fail("unknown generator '" + name + "'");
                }
                int power = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip();
                    const std::size_t ps = i;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                        ++i;
                    }
                    if (ps == i) {
                        fail("missing exponent after '^'");
                    }
                    power = std::stoi(text.substr(ps, i - ps));
                }
                mono[*idx] += power;
            } else {
                fail(std::string("unexpected character '") + text[i] + "'");
            }
            any_factor = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!any_factor) {
            fail("empty term");
        }
        const int d = ring->degree(mono);
        if (degree >= 0 && d != degree && coeff != 0) {
            fail("term " + ring->monomial_str(mono) + " has degree " + std::to_string(d) + ", expected "
                 + std::to_string(degree));
        }
        if (d > ring->top_degree()) {
            fail("term " + ring->monomial_str(mono) + " exceeds the top degree");
        }
        result += CohomClass<Rational>::term(ring, mono, coeff);
    }
    return result;
}

// Inverse of parse_polynomial: "0" for zero, "a - 1/2*b" style signs.
inline std::string polynomial_string(const CohomClass<Rational> &c)
{
    if (c.is_zero()) {
        return "0";
    }
    // Low degree first; within a degree, earlier generators first.
    std::vector<std::pair<Monomial, Rational>> terms(c.terms().begin(), c.terms().end());
    const RingSpec &ring = *c.ring();
    std::stable_sort(terms.begin(), terms.end(), [&](const auto &a, const auto &b) {
        const int da = ring.degree(a.first);
        const int db = ring.degree(b.first);
        return da != db ? da < db : a.first > b.first;
    });
    std::string out;
    for (const auto &[m, coeff] : terms) {
        const bool neg = coeff < 0;
        const Rational mag = neg ? Rational(-coeff) : coeff;
        if (out.empty()) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        const std::string mono = c.ring()->monomial_str(m);
        if (mono == "1") {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }
    return out;
}

struct ManifestOptions {
    std::optional<int> order;
    std::optional<double> radius;
    std::optional<double> tolerance;

    friend bool operator==(const ManifestOptions &, const ManifestOptions &) = default;
};

struct Manifest {
    Lattice lattice;
    bool lattice_from_tau;
    std::optional<double> arg_base;
    ManifoldSpec manifold;
    ManifestOptions options;

    ArgumentChoice argument_choice() const
    {
        return arg_base ? ArgumentChoice(*arg_base) : ArgumentChoice::standard(lattice);
    }
};

namespace detail
{

class Reader
{
public:
    Reader(std::string source, std::map<std::string, int> lines)
        : source_(std::move(source)), lines_(std::move(lines))
    {
    }

    [[noreturn]] void fail(const std::string &pointer, const std::string &what) const
    {
        // Use the closest enclosing pointer that has a recorded line.
        std::string p = pointer;
        while (true) {
            const auto it = lines_.find(p);
            if (it != lines_.end()) {
                throw ManifestError(source_, it->second, pointer, what);
            }
            if (p.empty()) {
                throw ManifestError(source_, 1, pointer, what);
            }
            p = p.substr(0, p.rfind('/'));
        }
    }

    const json &member(const json &obj, const std::string &ptr, const std::string &key, bool required = true) const
    {
        static const json null_value;
        if (!obj.is_object()) {
            fail(ptr, "expected an object");
        }
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) {
                fail(ptr, "missing required field '" + key + "'");
            }
            return null_value;
        }
        return *it;
    }

    void only_keys(const json &obj, const std::string &ptr, std::initializer_list<const char *> allowed) const
    {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool ok = false;
            for (const char *a : allowed) {
                ok = ok || it.key() == a;
            }
            if (!ok) {
                fail(ptr + "/" + it.key(), "unknown field '" + it.key() + "'");
            }
        }
    }

    double number(const json &v, const std::string &ptr) const
    {
        if (!v.is_number()) {
            fail(ptr, "expected a number");
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            fail(ptr, "expected a finite number");
        }
        return d;
    }

    int integer(const json &v, const std::string &ptr) const
    {
        if (!v.is_number_integer()) {
            fail(ptr, "expected an integer");
        }
        return v.get<int>();
    }

    Complex complex(const json &v, const std::string &ptr) const
    {
        if (!v.is_array() || v.size() != 2) {
            fail(ptr, "expected a complex number as [re, im]");
        }
        return {number(v[0], ptr + "/0"), number(v[1], ptr + "/1")};
    }

    Rational rational(const json &v, const std::string &ptr) const
    {
        if (v.is_number_integer()) {
            return Rational(v.get<long long>());
        }
        if (!v.is_string()) {
            fail(ptr, "expected a rational as an integer or a \"p/q\" string");
        }
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::exception &e) {
            fail(ptr, e.what());
        }
    }

    CohomClass<Rational> polynomial(const json &v, const std::string &ptr, const RingPtr &ring, int degree) const
    {
        if (v.is_number_integer() && v.get<long long>() == 0) {
            return CohomClass<Rational>(ring);
        }
        if (!v.is_string()) {
            fail(ptr, "expected a polynomial string in the ring generators");
        }
        try {
            return parse_polynomial(v.get<std::string>(), ring, degree);
        } catch (const std::exception &e) {
            fail(ptr, e.what());
        }
    }

private:
    std::string source_;
    std::map<std::string, int> lines_;
};

} // namespace detail

inline Manifest parse_manifest(const std::string &text, const std::string &source = "<manifest>")
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        // Convert the byte offset into a line number.
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
        throw ManifestError(source, line, "", std::string("JSON syntax error: ") + e.what());
    }
    const detail::Reader rd(source, json_pointer_lines(text));
    if (!doc.is_object()) {
        rd.fail("", "manifest must be a JSON object");
    }
    rd.only_keys(doc, "", {"lattice", "arg_choice", "ring", "tangent", "options"});

    // Lattice.
    const json &lat = rd.member(doc, "", "lattice");
    rd.only_keys(lat, "/lattice", {"omega1", "omega2", "tau"});
    std::optional<Lattice> lattice;
    bool from_tau = false;
    if (lat.contains("tau")) {
        if (lat.contains("omega1") || lat.contains("omega2")) {
            rd.fail("/lattice", "give either tau or omega1/omega2, not both");
        }
        const Complex tau = rd.complex(lat["tau"], "/lattice/tau");
        from_tau = true;
        try {
            lattice = Lattice::from_tau(tau);
        } catch (const std::exception &e) {
            rd.fail("/lattice/tau", e.what());
        }
    } else {
        const Complex w1 = rd.complex(rd.member(lat, "/lattice", "omega1"), "/lattice/omega1");
        const Complex w2 = rd.complex(rd.member(lat, "/lattice", "omega2"), "/lattice/omega2");
        try {
            lattice = Lattice(w1, w2);
        } catch (const std::exception &e) {
            rd.fail("/lattice/omega2", e.what());
        }
    }

    // Argument choice.
    std::optional<double> arg_base;
    if (doc.contains("arg_choice") && !doc["arg_choice"].is_null()) {
        arg_base = rd.number(doc["arg_choice"], "/arg_choice");
        if (!(*arg_base >= -pi && *arg_base < pi)) {
            rd.fail("/arg_choice", "base angle must lie in [-pi, pi)");
        }
    }

    // Ring.
    const json &rj = rd.member(doc, "", "ring");
    rd.only_keys(rj, "/ring", {"generators", "top_degree", "integral_table"});
    const json &gens = rd.member(rj, "/ring", "generators");
    if (!gens.is_array()) {
        rd.fail("/ring/generators", "expected an array of {name, degree}");
    }
    std::vector<Generator> generators;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const std::string p = "/ring/generators/" + std::to_string(k);
        rd.only_keys(gens[k], p, {"name", "degree"});
        const json &name = rd.member(gens[k], p, "name");
        if (!name.is_string()) {
            rd.fail(p + "/name", "expected a string");
        }
        const std::string n = name.get<std::string>();
        if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')
            || !std::all_of(n.begin(), n.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })) {
            rd.fail(p + "/name", "generator names must be identifiers");
        }
        const int deg = rd.integer(rd.member(gens[k], p, "degree"), p + "/degree");
        if (deg <= 0 || deg % 2 != 0) {
            rd.fail(p + "/degree", "generator degree must be even and positive");
        }
        for (const auto &g : generators) {
            if (g.name == n) {
                rd.fail(p + "/name", "duplicate generator name '" + n + "'");
            }
        }
        generators.push_back({n, deg});
    }
    const int top = rd.integer(rd.member(rj, "/ring", "top_degree"), "/ring/top_degree");
    if (top < 0 || top % 2 != 0) {
        rd.fail("/ring/top_degree", "top degree must be a nonnegative even integer");
    }
    // Parse the table against a provisional ring (all zeros) so monomials can be read.
    const RingPtr provisional = make_ring(RingSpec::with_default_zeros(generators, top, {}));
    const json &table = rd.member(rj, "/ring", "integral_table");
    if (!table.is_object()) {
        rd.fail("/ring/integral_table", "expected an object mapping top-degree monomials to rationals");
    }
    std::map<Monomial, Rational> entries;
    for (auto it = table.begin(); it != table.end(); ++it) {
        const std::string p = "/ring/integral_table/" + it.key();
        const CohomClass<Rational> mono = rd.polynomial(json(it.key()), p, provisional, top);
        if (mono.terms().size() != 1 || mono.terms().begin()->second != 1) {
            rd.fail(p, "keys must be single monomials such as \"x^2*y\"");
        }
        const Monomial m = mono.terms().begin()->first;
        if (entries.count(m)) {
            rd.fail(p, "monomial listed twice");
        }
        entries.emplace(m, rd.rational(it.value(), p));
    }
    for (const auto &m : provisional->monomials_of_degree(top)) {
        if (!entries.count(m)) {
            rd.fail("/ring/integral_table",
                    "missing top-degree monomial " + provisional->monomial_str(m) + " (list it with value 0 if needed)");
        }
    }
    const RingPtr ring = make_ring(RingSpec(generators, top, entries));

    // Tangent data.
    const json &tj = rd.member(doc, "", "tangent");
    rd.only_keys(tj, "/tangent", {"dimension", "pontryagin"});
    const int dim = rd.integer(rd.member(tj, "/tangent", "dimension"), "/tangent/dimension");
    if (dim < 0 || dim % 2 != 0) {
        rd.fail("/tangent/dimension", "dimension must be a nonnegative even integer");
    }
    if (dim != top) {
        rd.fail("/tangent/dimension", "dimension must equal ring.top_degree (" + std::to_string(top) + ")");
    }
    std::vector<CohomClass<Rational>> pont;
    const json &pj = rd.member(tj, "/tangent", "pontryagin", false);
    if (!pj.is_null()) {
        if (!pj.is_array()) {
            rd.fail("/tangent/pontryagin", "expected an array [p1, p2, ...]");
        }
        for (std::size_t k = 0; k < pj.size(); ++k) {
            pont.push_back(rd.polynomial(pj[k], "/tangent/pontryagin/" + std::to_string(k), ring,
                                         4 * static_cast<int>(k + 1)));
        }
    }

    // Options.
    ManifestOptions options;
    const json &oj = rd.member(doc, "", "options", false);
    if (!oj.is_null()) {
        rd.only_keys(oj, "/options", {"order", "radius", "tolerance"});
        if (oj.contains("order")) {
            options.order = rd.integer(oj["order"], "/options/order");
            if (*options.order < 0) {
                rd.fail("/options/order", "order must be nonnegative");
            }
        }
        if (oj.contains("radius")) {
            options.radius = rd.number(oj["radius"], "/options/radius");
            if (!(*options.radius > 0)) {
                rd.fail("/options/radius", "radius must be positive");
            }
        }
        if (oj.contains("tolerance")) {
            options.tolerance = rd.number(oj["tolerance"], "/options/tolerance");
            if (!(*options.tolerance > 0)) {
                rd.fail("/options/tolerance", "tolerance must be positive");
            }
        }
    }

    return Manifest{*lattice, from_tau, arg_base, ManifoldSpec(ring, TangentData(ring, std::move(pont), dim)), options};
}

inline Manifest load_manifest(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ManifestError(path, 0, "", "cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str(), path);
}

// Canonical document: fixed key order (nlohmann sorts object keys) and canonical polynomials.
inline json manifest_to_json(const Manifest &m)
{
    json doc;
    const auto cplx = [](Complex z) { return json::array({z.real(), z.imag()}); };
    if (m.lattice_from_tau) {
        doc["lattice"] = {{"tau", cplx(m.lattice.tau())}};
    } else {
        doc["lattice"] = {{"omega1", cplx(m.lattice.omega1())}, {"omega2", cplx(m.lattice.omega2())}};
    }
    if (m.arg_base) {
        doc["arg_choice"] = *m.arg_base;
    }
    const RingSpec &ring = *m.manifold.ring();
    json gens = json::array();
    for (const auto &g : ring.generators()) {
        gens.push_back({{"name", g.name}, {"degree", g.degree}});
    }
    json table = json::object();
    for (const auto &[mono, v] : ring.integral_table()) {
        table[ring.monomial_str(mono)] = to_string(v);
    }
    doc["ring"] = {{"generators", gens}, {"top_degree", ring.top_degree()}, {"integral_table", table}};
    json pont = json::array();
    for (const auto &p : m.manifold.tangent().pontryagin()) {
        pont.push_back(polynomial_string(p));
    }
    while (!pont.empty() && pont.back() == "0") {
        pont.erase(pont.end() - 1);
    }
    doc["tangent"] = {{"dimension", m.manifold.dimension()}, {"pontryagin", pont}};
    json opts = json::object();
    if (m.options.order) {
        opts["order"] = *m.options.order;
    }
    if (m.options.radius) {
        opts["radius"] = *m.options.radius;
    }
    if (m.options.tolerance) {
        opts["tolerance"] = *m.options.tolerance;
    }
    if (!opts.empty()) {
        doc["options"] = opts;
    }
    return doc;
}

} // namespace witloc::io

#endif
