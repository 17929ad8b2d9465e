#include "g2c/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "g2c/errors.hpp"

namespace g2c {

namespace {

[[noreturn]] void fail_line(int line, const std::string& what) {
    throw input_error("line " + std::to_string(line) + ": " + what);
}

F3Poly digits_of(const std::string& s, int line) {
    F3Poly p;
    for (char ch : s) {
        if (ch < '0' || ch > '2') fail_line(line, "expected digits 0..2, got '" + std::string(1, ch) + "'");
        p.push_back(static_cast<uint8_t>(ch - '0'));
    }
    if (p.empty()) fail_line(line, "empty digit string");
    return p;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

CurveInput parse_curve_file(std::istream& in) {
    std::map<std::string, std::pair<std::string, int>> kv;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = strip(s);
        if (s.empty()) continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) fail_line(line, "expected key=value");
        std::string key = strip(s.substr(0, eq)), val = strip(s.substr(eq + 1));
        if (kv.count(key)) fail_line(line, "duplicate key " + key);
        kv[key] = {val, line};
    }
    auto take = [&](const std::string& key, bool required) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (required) throw input_error("missing required key " + key);
            return std::pair<std::string, int>{"", 0};
        }
        auto v = it->second;
        kv.erase(it);
        return v;
    };

    CurveInput out;
    auto [nstr, nline] = take("field.n", true);
    int n = 0;
    try {
        size_t used = 0;
        n = std::stoi(nstr, &used);
        if (used != nstr.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        fail_line(nline, "field.n must be an integer");
    }
    if (n < 1 || n > 4096) fail_line(nline, "field.n out of range");
    auto [mstr, mline] = take("field.modulus", false);
    if (mstr.empty()) {
        out.F = Field::make(n);
    } else {
        F3Poly mod = digits_of(mstr, mline);
        if (static_cast<int>(mod.size()) != n + 1)
            fail_line(mline, "field.modulus needs exactly " + std::to_string(n + 1) + " digits");
        out.F = Field::make(n, mod);  // validates irreducibility
    }

    auto parse_elems = [&](const std::string& val, int vline, size_t count) {
        std::vector<FElem> elems;
        for (const std::string& piece : split(val, ',')) {
            F3Poly digits = digits_of(strip(piece), vline);
            if (static_cast<int>(digits.size()) > n) fail_line(vline, "element has more than n digits");
            elems.push_back(out.F->from_f3poly(digits));
        }
        if (elems.size() != count)
            fail_line(vline, "expected " + std::to_string(count) + " comma-separated elements");
        return elems;
    };

    auto [rstr, rline] = take("curve.rosenhain", false);
    auto [qstr, qline] = take("curve.quintic", false);
    if (!kv.empty()) {
        auto it = kv.begin();
        fail_line(it->second.second, "unknown key " + it->first);
    }
    if (rstr.empty() == qstr.empty())
        throw input_error("exactly one of curve.rosenhain and curve.quintic is required");
    if (!rstr.empty()) {
        out.rosenhain = true;
        auto elems = parse_elems(rstr, rline, 3);
        for (size_t i = 0; i < 3; ++i) out.e[i] = elems[i];
    } else {
        out.rosenhain = false;
        out.quintic = parse_elems(qstr, qline, 6);
    }
    return out;
}

CurveInput load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open curve file " + path);
    return parse_curve_file(in);
}

Curve input_to_curve(const CurveInput& in) {
    if (in.rosenhain) {
        RosenhainCurve rc = make_rosenhain(in.F, in.e[0], in.e[1], in.e[2]);
        return to_curve(rc);
    }
    return make_curve_quintic(in.F, in.quintic);
}

std::string format_result(const ResultRecord& r) {
    const FrobCharPoly& c = r.chi;
    std::vector<mpz_class> coeffs = {1, -c.s1, c.s2, -c.q * c.s1, c.q * c.q};
    std::string out = "chi.coeffs=";
    for (size_t i = 0; i < coeffs.size(); ++i)
        out += (i ? "," : "") + coeffs[i].get_str();
    out += "\norder=" + c.order().get_str();
    out += "\nextension_degree=" + std::to_string(r.extension_degree);
    out += "\nprecision=" + std::to_string(r.precision);
    out += "\nordinary=" + std::string(r.ordinary ? "1" : "0");
    char buf[64];
    auto tline = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "\ntime.%s=%.6f", key, v);
        out += buf;
    };
    tline("theta", r.t_theta);
    tline("lift", r.t_lift);
    tline("norm", r.t_norm);
    tline("chi", r.t_chi);
    out += "\n";
    return out;
}

ResultRecord parse_result(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string s;
    int line = 0;
    while (std::getline(in, s)) {
        ++line;
        s = strip(s);
        if (s.empty()) continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) fail_line(line, "expected key=value");
        kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw input_error("result record missing " + key);
        return it->second;
    };
    ResultRecord r;
    std::vector<std::string> cs = split(need("chi.coeffs"), ',');
    if (cs.size() != 5) throw input_error("chi.coeffs needs 5 entries");
    std::vector<mpz_class> coeffs;
    for (const std::string& piece : cs) coeffs.emplace_back(piece);
    if (coeffs[0] != 1) throw input_error("chi is not monic");
    r.chi.s1 = -coeffs[1];
    r.chi.s2 = coeffs[2];
    mpz_class q;
    mpz_sqrt(q.get_mpz_t(), coeffs[4].get_mpz_t());
    if (q * q != coeffs[4]) throw input_error("chi constant term is not a square");
    r.chi.q = q;
    if (coeffs[3] != -q * r.chi.s1) throw input_error("chi violates the functional equation");
    if (mpz_class(need("order")) != r.chi.order()) throw input_error("order does not match chi(1)");
    r.extension_degree = std::stoi(need("extension_degree"));
    r.precision = std::stoi(need("precision"));
    r.ordinary = need("ordinary") == "1";
    r.t_theta = std::stod(need("time.theta"));
    r.t_lift = std::stod(need("time.lift"));
    r.t_norm = std::stod(need("time.norm"));
    r.t_chi = std::stod(need("time.chi"));
    return r;
}

}  // namespace g2c
