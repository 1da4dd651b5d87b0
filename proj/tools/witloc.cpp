#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <witloc/io/manifest.hpp>
#include <witloc/witloc.hpp>

namespace
{

using namespace witloc;
using ojson = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_tolerance = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------------------------
// Environment and parsing helpers

int digits = 15;
std::optional<double> env_radius;

void read_environment()
{
    if (const char *p = std::getenv("WITLOC_PRECISION"); p && *p) {
        char *end = nullptr;
        const long d = std::strtol(p, &end, 10);
        if (*end != '\0' || d < 1 || d > 17) {
            throw UsageError("WITLOC_PRECISION must be an integer in [1, 17]");
        }
        digits = static_cast<int>(d);
    }
    if (const char *p = std::getenv("WITLOC_RADIUS"); p && *p) {
        char *end = nullptr;
        const double r = std::strtod(p, &end);
        if (*end != '\0' || !(r > 0) || !std::isfinite(r)) {
            throw UsageError("WITLOC_RADIUS must be a positive number");
        }
        env_radius = r;
    }
}

// Accepts "3+2i", "-i", "2.5", "1e-3-4i", "2i", "(1+3i)/2".
Complex parse_complex(const std::string &raw)
{
    std::string s;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    const auto bad = [&]() { return UsageError("cannot parse complex number '" + raw + "'"); };
    if (s.empty()) {
        throw bad();
    }
    if (s.front() == '(') {
        const auto close = s.find(')');
        if (close == std::string::npos) {
            throw bad();
        }
        const Complex inner = parse_complex(s.substr(1, close - 1));
        const std::string rest = s.substr(close + 1);
        if (rest.empty()) {
            return inner;
        }
        if (rest.size() < 2 || rest[0] != '/') {
            throw bad();
        }
        char *end = nullptr;
        const double d = std::strtod(rest.c_str() + 1, &end);
        if (*end != '\0' || d == 0.0) {
            throw bad();
        }
        return inner / d;
    }
    double re = 0.0;
    double im = 0.0;
    std::size_t p = 0;
    int terms = 0;
    while (p < s.size()) {
        double sign = 1.0;
        if (s[p] == '+' || s[p] == '-') {
            sign = s[p] == '-' ? -1.0 : 1.0;
            ++p;
        } else if (terms > 0) {
            throw bad();
        }
        if (p >= s.size()) {
            throw bad();
        }
        double v = 1.0;
        if (s[p] != 'i') {
            if (!(std::isdigit(static_cast<unsigned char>(s[p])) || s[p] == '.')) {
                throw bad();
            }
            char *end = nullptr;
            v = std::strtod(s.c_str() + p, &end);
            p = static_cast<std::size_t>(end - s.c_str());
        }
        if (p < s.size() && s[p] == 'i') {
            im += sign * v;
            ++p;
        } else {
            re += sign * v;
        }
        if (++terms > 2) {
            throw bad();
        }
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw bad();
    }
    return {re, im};
}

std::string fmt(double x)
{
    return format_real(x, digits);
}
std::string fmt(Complex z)
{
    return format_complex(z, digits);
}

// Rounds to the printed precision so JSON and table output agree.
double rounded(double x)
{
    return std::strtod(format_real(x, digits).c_str(), nullptr);
}
ojson jnum(double x)
{
    return rounded(x);
}
ojson jnum(Complex z)
{
    return ojson::array({rounded(z.real()), rounded(z.imag())});
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------------------------
// Report: a two-column table on stdout, or one JSON record with --json.

class Report
{
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void input(const std::string &key, const std::string &text, ojson value)
    {
        rows_.push_back({key, text});
        inputs_[key] = std::move(value);
    }
    void value(const std::string &key, const std::string &text, ojson v)
    {
        rows_.push_back({key, text});
        values_[key] = std::move(v);
    }
    void estimate(const std::string &key, double e)
    {
        rows_.push_back({key, fmt(e)});
        errors_[key] = jnum(e);
    }
    // Recorded in the JSON record only.
    void estimate_quiet(const std::string &key, double e)
    {
        errors_[key] = jnum(e);
    }
    void timing(const std::string &key, double s)
    {
        timings_[key] = s;
    }
    void line(const std::string &text)
    {
        rows_.push_back({"", text});
    }

    void print(bool as_json, bool with_timings) const
    {
        if (as_json) {
            ojson rec;
            rec["command"] = command_;
            rec["inputs_echo"] = inputs_.empty() ? ojson::object() : inputs_;
            rec["values"] = values_.empty() ? ojson::object() : values_;
            rec["error_estimates"] = errors_.empty() ? ojson::object() : errors_;
            if (with_timings) {
                rec["timings"] = timings_.empty() ? ojson::object() : timings_;
            }
            std::cout << rec.dump(2) << "\n";
            return;
        }
        std::size_t width = 0;
        for (const auto &[k, v] : rows_) {
            width = std::max(width, k.size());
        }
        for (const auto &[k, v] : rows_) {
            if (k.empty()) {
                std::cout << v << "\n";
            } else {
                std::cout << k << std::string(width + 2 - k.size(), ' ') << v << "\n";
            }
        }
        if (with_timings) {
            for (const auto &[k, v] : timings_.items()) {
                std::cout << "time." << k << std::string(width > k.size() + 3 ? width - k.size() - 3 : 1, ' ')
                          << fmt(v.get<double>()) << " s\n";
            }
        }
    }

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> rows_;
    ojson inputs_ = ojson::object();
    ojson values_ = ojson::object();
    ojson errors_ = ojson::object();
    ojson timings_ = ojson::object();
};

struct Common {
    bool json = false;
    bool timings = false;
};

struct LatticeArgs {
    std::string tau;
    std::string omega1;
    std::string omega2;

    void attach(CLI::App *sub)
    {
        auto *t = sub->add_option("--tau", tau, "modular parameter, e.g. i, 2i, (1+3i)/2 (omega1 = 1)");
        auto *a = sub->add_option("--omega1", omega1, "first basis vector");
        auto *b = sub->add_option("--omega2", omega2, "second basis vector");
        t->excludes(a)->excludes(b);
        a->needs(b);
        b->needs(a);
    }

    Lattice build(Report &r) const
    {
        Lattice l = Lattice::square();
        try {
            if (!omega1.empty()) {
                l = Lattice(parse_complex(omega1), parse_complex(omega2));
            } else {
                const Complex t = tau.empty() ? Complex(0.0, 1.0) : parse_complex(tau);
                if (!(t.imag() > 0)) {
                    throw UsageError("tau must lie in the upper half plane (Im tau > 0)");
                }
                l = Lattice::from_tau(t);
            }
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        r.input("omega1", fmt(l.omega1()), jnum(l.omega1()));
        r.input("omega2", fmt(l.omega2()), jnum(l.omega2()));
        r.input("tau", fmt(l.tau()), jnum(l.tau()));
        return l;
    }
};

ArgumentChoice choose_argument(const std::optional<double> &base, const Lattice &l, Report &r)
{
    try {
        const ArgumentChoice c = base ? ArgumentChoice(*base) : ArgumentChoice::standard(l);
        r.input("arg_base", fmt(c.base_angle()) + (base ? "" : " (arg omega1)"), jnum(c.base_angle()));
        return c;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

double lattice_radius(const std::optional<double> &flag, const Lattice &l)
{
    if (flag) {
        if (!(*flag > 0)) {
            throw UsageError("--radius must be positive");
        }
        return *flag;
    }
    return env_radius ? *env_radius : default_radius(l);
}

// ---------------------------------------------------------------------------------------------
// eisenstein

struct EisensteinArgs {
    LatticeArgs lattice;
    int two_k = 4;
    std::optional<double> radius;
    double tol = 1e-8;
    int order = 200;
    std::optional<double> arg_base;
};

int cmd_eisenstein(const EisensteinArgs &a, const Common &c)
{
    if (a.two_k < 2 || a.two_k % 2 != 0) {
        throw UsageError("--two-k must be an even integer >= 2 (got " + std::to_string(a.two_k) + ")");
    }
    Report r("eisenstein");
    const Lattice l = a.lattice.build(r);
    r.input("two_k", std::to_string(a.two_k), a.two_k);
    const auto t0 = std::chrono::steady_clock::now();
    if (a.two_k == 2) {
        if (a.order < 1) {
            throw UsageError("--order must be positive");
        }
        const ArgumentChoice choice = choose_argument(a.arg_base, l, r);
        r.input("eta_order", std::to_string(a.order), a.order);
        const Complex iterated = g2_iterated(l.tau());
        const Complex via_eta = g2_from_eta(l.tau(), a.order);
        r.value("G2(tau)", fmt(iterated), jnum(iterated));
        r.value("G2_eta(tau)", fmt(via_eta), jnum(via_eta));
        r.value("zeta2", fmt(g2_regularized(l, choice)), jnum(g2_regularized(l, choice)));
        r.estimate("eta_cross_check", std::abs(iterated - via_eta));
        r.value("within_tol", std::abs(iterated - via_eta) <= a.tol ? "yes" : "no",
                std::abs(iterated - via_eta) <= a.tol);
    } else {
        const double radius = lattice_radius(a.radius, l);
        r.input("radius", fmt(radius), jnum(radius));
        r.input("tol", fmt(a.tol), jnum(a.tol));
        const auto est = eisenstein_converged(l, a.two_k, a.tol, radius);
        const std::string name = "G" + std::to_string(a.two_k);
        r.value(name, fmt(est.value), jnum(est.value));
        r.value("final_radius", fmt(est.radius), jnum(est.radius));
        r.estimate("radius_doubling", est.error_estimate);
        r.value("within_tol", est.error_estimate <= a.tol ? "yes" : "no", est.error_estimate <= a.tol);
    }
    r.timing("total", seconds_since(t0));
    r.print(c.json, c.timings);
    return exit_ok;
}

// ---------------------------------------------------------------------------------------------
// sigma

struct SigmaArgs {
    LatticeArgs lattice;
    int order = 12;
    double radius = 100.0;
    std::vector<std::string> points;
    double tol = 1e-6;
};

int cmd_sigma(const SigmaArgs &a, const Common &c)
{
    if (a.order < 1) {
        throw UsageError("--order must be >= 1");
    }
    if (!(a.radius > 0)) {
        throw UsageError("--radius must be positive");
    }
    Report r("sigma");
    const Lattice l = a.lattice.build(r);
    r.input("order", std::to_string(a.order), a.order);
    r.input("radius", fmt(a.radius), jnum(a.radius));
    r.input("tol", fmt(a.tol), jnum(a.tol));
    std::vector<Complex> zs;
    for (const auto &p : a.points) {
        zs.push_back(parse_complex(p));
    }
    if (zs.empty()) {
        zs = {Complex(0.3, 0.1), Complex(-0.2, 0.25), Complex(0.1, -0.35), Complex(0.4, 0.0), Complex(0.0, 0.4)};
    }
    const auto t0 = std::chrono::steady_clock::now();
    const double eis_radius = env_radius ? *env_radius : default_radius(l);
    const ComplexSeries s = sigma_series(l, a.order, eis_radius);
    ojson coeffs = ojson::array();
    for (int n = 0; n <= a.order; ++n) {
        r.line("z^" + std::to_string(n) + "  " + fmt(s[n]));
        coeffs.push_back(jnum(s[n]));
    }
    r.value("coefficients", std::to_string(a.order + 1) + " listed above", coeffs);
    double worst = 0.0;
    ojson evals = ojson::array();
    for (const Complex z : zs) {
        const Complex series = s.evaluate(z);
        const Complex direct = sigma_direct(z, l, a.radius);
        const double diff = std::abs(series - direct);
        worst = std::max(worst, diff);
        r.line("z=" + fmt(z) + "  series=" + fmt(series) + "  direct=" + fmt(direct) + "  |diff|=" + fmt(diff));
        evals.push_back({{"z", jnum(z)}, {"series", jnum(series)}, {"direct", jnum(direct)}, {"abs_diff", jnum(diff)}});
    }
    r.value("evaluations", std::to_string(zs.size()) + " points listed above", evals);
    r.estimate("max_disagreement", worst);
    r.value("within_tol", worst <= a.tol ? "yes" : "no", worst <= a.tol);
    r.timing("total", seconds_since(t0));
    r.print(c.json, c.timings);
    return exit_ok;
}

// ---------------------------------------------------------------------------------------------
// eta

struct EtaArgs {
    std::string tau = "i";
    int order = 40;
};

int cmd_eta(const EtaArgs &a, const Common &c)
{
    if (a.order < 1) {
        throw UsageError("--order must be >= 1");
    }
    Report r("eta");
    const Complex tau = parse_complex(a.tau);
    if (!(tau.imag() > 0)) {
        throw UsageError("tau must lie in the upper half plane (Im tau > 0)");
    }
    r.input("tau", fmt(tau), jnum(tau));
    r.input("order", std::to_string(a.order), a.order);
    const auto t0 = std::chrono::steady_clock::now();
    const Complex eta = dedekind_eta(tau, a.order);
    const Complex eta_ref = dedekind_eta(tau, 4 * a.order);
    r.value("eta", fmt(eta), jnum(eta));
    r.estimate("truncation", std::abs(eta - eta_ref));
    const Complex g2e = g2_from_eta(tau, a.order);
    const Complex g2i = g2_iterated(tau);
    r.value("G2_eta", fmt(g2e), jnum(g2e));
    r.value("G2_iterated", fmt(g2i), jnum(g2i));
    r.estimate("G2_agreement", std::abs(g2e - g2i));
    r.timing("total", seconds_since(t0));
    r.print(c.json, c.timings);
    return exit_ok;
}

// ---------------------------------------------------------------------------------------------
// witten

struct WittenArgs {
    std::string manifest;
    bool symbolic = false;
    bool real = false;
    std::optional<double> arg_base;
    std::optional<double> radius;
    bool emit_manifest = false;
};

std::string coeff_text(const Complex &z)
{
    return fmt(z);
}
std::string coeff_text(const Symbolic &s)
{
    return format_scalar(s);
}
ojson coeff_json(const Complex &z)
{
    return jnum(z);
}
ojson coeff_json(const Symbolic &s)
{
    return s.str();
}

template <typename S>
void report_components(Report &r, const std::string &label, const CohomClass<S> &w)
{
    const RingSpec &ring = *w.ring();
    for (int d = 0; d <= ring.top_degree(); d += 2) {
        const CohomClass<S> part = w.homogeneous_component(d);
        std::string text;
        ojson terms = ojson::array();
        std::vector<std::pair<Monomial, S>> sorted(part.terms().begin(), part.terms().end());
        std::sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y) { return x.first > y.first; });
        for (const auto &[m, coeff] : sorted) {
            const std::string mono = ring.monomial_str(m);
            text += (text.empty() ? "" : " + ") + coeff_text(coeff) + (mono == "1" ? "" : "*" + mono);
            terms.push_back({{"monomial", mono}, {"coefficient", coeff_json(coeff)}});
        }
        r.value(label + "_" + std::to_string(d / 2), text.empty() ? "0" : text, terms);
    }
}

int cmd_witten(const WittenArgs &a, const Common &c)
{
    io::Manifest m = [&]() {
        try {
            return io::load_manifest(a.manifest);
        } catch (const io::ManifestError &e) {
            throw UsageError(e.what());
        }
    }();
    if (a.emit_manifest) {
        std::cout << io::manifest_to_json(m).dump(2) << "\n";
        return exit_ok;
    }
    const ManifoldSpec &mf = m.manifold;
    if (m.options.order && *m.options.order < mf.dimension() / 2) {
        throw UsageError(a.manifest + ": options.order must be at least dimension/2 = "
                         + std::to_string(mf.dimension() / 2));
    }
    Report r("witten");
    r.input("manifest", a.manifest, a.manifest);
    const Lattice &l = m.lattice;
    r.input("omega1", fmt(l.omega1()), jnum(l.omega1()));
    r.input("omega2", fmt(l.omega2()), jnum(l.omega2()));
    r.input("dimension", std::to_string(mf.dimension()), mf.dimension());
    r.input("string", mf.string_flag() ? "yes" : "no", mf.string_flag());
    r.input("mode", std::string(a.symbolic ? "symbolic" : "numeric") + (a.real ? ", real" : ""),
            std::string(a.symbolic ? "symbolic" : "numeric") + (a.real ? "-real" : ""));

    const std::optional<double> base = a.arg_base ? a.arg_base : m.arg_base;
    const auto t0 = std::chrono::steady_clock::now();
    if (a.symbolic) {
        if (a.real) {
            const auto w = symbolic_real_witten_class(mf);
            report_components(r, "WitR", w);
            r.value("integral", coeff_text(w.integrate()), coeff_json(w.integrate()));
        } else {
            report_components(r, "Wit", symbolic_witten_class(mf));
            const auto g = symbolic_witten_genus(mf);
            r.value("genus", coeff_text(g.value), coeff_json(g.value));
            r.value("xi_power", std::to_string(g.xi_power), g.xi_power);
        }
    } else {
        if (!mf.string_flag() && !base) {
            std::cerr << "warning: " << a.manifest
                      << " is not string (p1 != 0); the result depends on the argument choice. Using arg(omega1); pass "
                         "--arg-base to choose.\n";
        }
        const ArgumentChoice choice = choose_argument(base, l, r);
        const double radius = lattice_radius(a.radius ? a.radius : m.options.radius, l);
        r.input("radius", fmt(radius), jnum(radius));
        if (a.real) {
            const auto w = real_witten_class(mf, l, choice, radius);
            report_components(r, "WitR", w);
            r.value("integral", fmt(w.integrate()), jnum(w.integrate()));
        } else {
            report_components(r, "Wit", witten_class(mf, l, choice, radius));
            const auto g = witten_genus(mf, l, choice, radius);
            r.value("genus", fmt(g.value), jnum(g.value));
            r.value("xi_power", std::to_string(g.xi_power), g.xi_power);
        }
    }
    r.timing("total", seconds_since(t0));
    r.print(c.json, c.timings);
    return exit_ok;
}

// ---------------------------------------------------------------------------------------------
// localize-s2

struct LocalizeArgs {
    LatticeArgs lattice;
    std::vector<std::string> lambdas;
    std::optional<double> arg_base;
    bool flip = false;
    int points = 100;
    double h = 1e-5;
    double tol = 1e-6;
};

std::string rhs_text(const std::map<int, GaussianRational> &rhs)
{
    if (rhs.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[power, coeff] : rhs) {
        out += (out.empty() ? "" : " + ") + format_scalar(coeff) + "*pi";
        if (power != 0) {
            out += "*xibar^" + std::to_string(power);
        }
    }
    return out;
}

int cmd_localize(const LocalizeArgs &a, const Common &c)
{
    if (a.points < 1) {
        throw UsageError("--points must be positive");
    }
    if (!(a.h > 0) || !(a.tol > 0)) {
        throw UsageError("--step and --tol must be positive");
    }
    Report r("localize-s2");
    const Lattice l = a.lattice.build(r);
    const ArgumentChoice choice = choose_argument(a.arg_base, l, r);
    r.input("flip", a.flip ? "yes" : "no", a.flip);
    r.input("points", std::to_string(a.points), a.points);
    r.input("h", fmt(a.h), jnum(a.h));
    r.input("tol", fmt(a.tol), jnum(a.tol));
    std::vector<Complex> lambdas;
    for (const auto &s : a.lambdas) {
        lambdas.push_back(parse_complex(s));
    }
    if (lambdas.empty()) {
        lambdas.push_back(Complex(1.0, 0.0));
    }
    const auto pts = halton_points(a.points);
    bool all_pass = true;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const Complex lam = lambdas[k];
        S2Result res;
        double residual = 0.0;
        try {
            res = s2_example(l, lam, choice, a.flip);
            residual = verify_closedness_s2(l, lam, pts, a.h);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("lambda ") + fmt(lam) + ": " + e.what());
        }
        const double lhs = a.flip ? -res.lhs_numeric : res.lhs_numeric;
        const bool exact_four_pi = res.rhs_over_pi == std::map<int, GaussianRational>{{0, GaussianRational(a.flip ? -4 : 4)}};
        const double gap = std::abs(lhs - res.rhs);
        const bool pass = exact_four_pi && gap <= a.tol && residual <= a.tol;
        all_pass = all_pass && pass;
        const std::string p = "lambda[" + std::to_string(k) + "]";
        r.value(p, fmt(lam), jnum(lam));
        r.value(p + ".lhs", fmt(lhs), jnum(lhs));
        r.value(p + ".rhs", fmt(res.rhs), jnum(res.rhs));
        r.value(p + ".rhs_exact", rhs_text(res.rhs_over_pi), rhs_text(res.rhs_over_pi));
        r.estimate(p + ".lhs_minus_rhs", gap);
        r.estimate(p + ".closedness_residual", residual);
        r.value(p + ".status", pass ? "PASS" : "FAIL", pass);
    }
    r.value("status", all_pass ? "PASS" : "FAIL", all_pass);
    r.timing("total", seconds_since(t0));
    r.print(c.json, c.timings);
    return all_pass ? exit_ok : exit_tolerance;
}

// ---------------------------------------------------------------------------------------------
// selfcheck

ManifoldSpec string8_fixture()
{
    const RingPtr ring = make_ring(RingSpec({{"a", 8}}, 8, {{{1}, Rational(1)}}));
    return ManifoldSpec(ring, TangentData(ring, {CohomClass<Rational>(ring), CohomClass<Rational>::generator(ring, "a")}, 8));
}

int cmd_selfcheck(double tol, const Common &c)
{
    Report r("selfcheck");
    r.input("tol", fmt(tol), jnum(tol));
    bool all = true;
    const auto check = [&](const std::string &name, double error, double bound) {
        const bool ok = error <= bound;
        all = all && ok;
        r.value(name, std::string(ok ? "PASS" : "FAIL") + "  error " + fmt(error) + " (bound " + fmt(bound) + ")", ok);
        r.estimate_quiet(name, error);
    };
    const auto t0 = std::chrono::steady_clock::now();
    const Lattice sq = Lattice::square();

    check("g2_at_i", std::abs(g2_iterated(Complex(0.0, 1.0)) - pi), 1e-9);
    double g2_gap = 0.0;
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.0, 2.0), Complex(0.5, 1.5)}) {
        g2_gap = std::max(g2_gap, std::abs(g2_iterated(tau) - g2_from_eta(tau)));
    }
    check("g2_eta_consistency", g2_gap, 1e-8);
    check("g6_square_lattice", std::abs(eisenstein(sq, 6)), 1e-10);

    const ComplexSeries s = sigma_series(sq, 12);
    double sig_gap = 0.0;
    for (Complex z : {Complex(0.3, 0.1), Complex(-0.2, 0.25), Complex(0.0, 0.4)}) {
        sig_gap = std::max(sig_gap, std::abs(s.evaluate(z) - sigma_direct(z, sq, 100.0)));
    }
    check("sigma_series_vs_product", sig_gap, tol);

    double s2_gap = 0.0;
    double closed = 0.0;
    const auto pts = halton_points(100);
    for (Complex lam : {Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(3.0, 2.0)}) {
        const auto res = s2_example(sq, lam, ArgumentChoice::standard(sq));
        const bool exact = res.rhs_over_pi == std::map<int, GaussianRational>{{0, GaussianRational(4)}};
        s2_gap = std::max({s2_gap, std::abs(res.lhs_numeric - 4 * pi), exact ? 0.0 : 1.0});
        closed = std::max(closed, verify_closedness_s2(sq, lam, pts));
    }
    check("s2_localization", s2_gap, tol);
    check("s2_closedness", closed, tol);

    {
        using G = GaussianRational;
        const RingPtr ring = make_ring(RingSpec::with_default_zeros({{"x", 2}}, 4, {{{2}, Rational(1)}}));
        const auto x = CohomClass<G>::generator(ring, "x");
        const auto v = RealEquivariantBundle<G>::from_complex_structure(
            ring, {{G(2, 1), 2, {x, G(Rational(1, 3)) * x * x}}, {G(-1, 3), 1, {G(-2) * x}}});
        const ArgumentChoice choice(0.7);
        const auto e = equivariant_euler_antiholo(v, choice);
        const bool ok = e * e == G((v.real_rank() / 2) % 2 == 0 ? 1 : -1) * top_chern_antiholo(v.complexification());
        check("euler_doubling_identity", ok ? 0.0 : 1.0, 0.0);
    }

    const ManifoldSpec m8 = string8_fixture();
    const Lattice l(1.0, Complex(0.2, 1.1));
    const ArgumentChoice choice = ArgumentChoice::standard(l);
    const auto recip = loopspace_regularized_top_chern(m8, l, choice) * xibar_graded(witten_class(m8, l, choice));
    double recip_gap = 0.0;
    for (const auto &[n, cls] : (recip - EquivariantClass<Complex>::one(m8.ring())).terms()) {
        for (const auto &[mono, coeff] : cls.terms()) {
            recip_gap = std::max(recip_gap, std::abs(coeff));
        }
    }
    check("witten_reciprocal", recip_gap, 1e-12);
    const auto g = witten_genus(m8, l, choice);
    check("witten_genus_string8", std::abs(g.value + eisenstein(l, 4)) + (g.xi_power == -4 ? 0.0 : 1.0), 1e-10);

    r.value("status", all ? "PASS" : "FAIL", all);
    r.timing("total", seconds_since(t0));
    r.print(c.json, c.timings);
    return all ? exit_ok : exit_tolerance;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Lattice special functions, antiholomorphic equivariant classes and Witten genera"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--json", common.json, "emit one JSON record instead of a table");
    app.add_flag("--timings", common.timings, "include wall-clock timings (output is then not reproducible)");

    EisensteinArgs ea;
    auto *eis = app.add_subcommand("eisenstein", "Eisenstein series G_2k of a lattice");
    ea.lattice.attach(eis);
    eis->add_option("--two-k", ea.two_k, "even weight 2k >= 2 (default 4)");
    eis->add_option("--radius", ea.radius, "summation radius (default from WITLOC_RADIUS or automatic)");
    eis->add_option("--tol", ea.tol, "tolerance for the radius-doubling check (default 1e-8)");
    eis->add_option("--order", ea.order, "eta product order for the weight-2 cross-check (default 200)");
    eis->add_option("--arg-base", ea.arg_base, "argument choice base angle for zeta2 (weight 2 only)");

    SigmaArgs sa;
    auto *sig = app.add_subcommand("sigma", "Weierstrass sigma: Taylor coefficients and product comparison");
    sa.lattice.attach(sig);
    sig->add_option("--order", sa.order, "series truncation order (default 12)");
    sig->add_option("--radius", sa.radius, "radius of the direct product (default 100)");
    sig->add_option("--point", sa.points, "evaluation point (repeatable)");
    sig->add_option("--tol", sa.tol, "agreement tolerance (default 1e-6)");

    EtaArgs ta;
    auto *eta = app.add_subcommand("eta", "Dedekind eta and the eta-formula for G2");
    eta->add_option("--tau", ta.tau, "modular parameter (default i)");
    eta->add_option("--order", ta.order, "product order (default 40)");

    WittenArgs wa;
    auto *wit = app.add_subcommand("witten", "Witten class and genus of a manifest");
    wit->add_option("manifest", wa.manifest, "manifest JSON file")->required();
    wit->add_flag("--symbolic", wa.symbolic, "coefficients as polynomials in zeta2, G4, G6, ...");
    wit->add_flag("--real", wa.real, "use the Pontryagin-root (real) Witten class");
    wit->add_option("--arg-base", wa.arg_base, "argument choice base angle in [-pi, pi)");
    wit->add_option("--radius", wa.radius, "lattice summation radius");
    wit->add_flag("--emit-manifest", wa.emit_manifest, "print the canonical manifest and exit");

    LocalizeArgs la;
    auto *loc = app.add_subcommand("localize-s2", "Localization check on the rotating 2-sphere");
    la.lattice.attach(loc);
    loc->add_option("--lambda", la.lambdas, "lattice weight (repeatable, default 1)");
    loc->add_option("--arg-base", la.arg_base, "argument choice base angle");
    loc->add_flag("--flip", la.flip, "reverse the orientation of the sphere");
    loc->add_option("--points", la.points, "closedness sample points (default 100)");
    loc->add_option("--step", la.h, "finite-difference step (default 1e-5)");
    loc->add_option("--tol", la.tol, "tolerance (default 1e-6)");

    double self_tol = 1e-6;
    auto *self = app.add_subcommand("selfcheck", "Quick internal consistency checks");
    self->add_option("--tol", self_tol, "tolerance for quadrature-type checks (default 1e-6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        read_environment();
        if (*eis) {
            return cmd_eisenstein(ea, common);
        }
        if (*sig) {
            return cmd_sigma(sa, common);
        }
        if (*eta) {
            return cmd_eta(ta, common);
        }
        if (*wit) {
            return cmd_witten(wa, common);
        }
        if (*loc) {
            return cmd_localize(la, common);
        }
        return cmd_selfcheck(self_tol, common);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
}
