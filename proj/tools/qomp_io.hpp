#ifndef QOMP_TOOLS_IO_HPP
#define QOMP_TOOLS_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <qomp/qomp.hpp>

namespace qomp::io
{

using nlohmann::json;

struct InputSpec {
    CharData data;
    SectionLattice section_lattice = SectionLattice::ambient;
    std::uint64_t box_limit = OracleOptions{}.box_limit;
    long guard = 0;
};

namespace detail
{

[[noreturn]] inline void fail(const std::string &where, const std::string &what)
{
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

inline Rat rat_field(const json &j, const std::string &where)
{
    if (j.is_number_integer()) {
        return Rat(j.get<long>());
    }
    if (!j.is_string()) {
        fail(where, "expected a rational string such as \"3/2\"");
    }
    try {
        return parse_rat(j.get<std::string>());
    } catch (const Error &e) {
        fail(where, e.what());
    }
}

inline SectionLattice lattice_choice(const std::string &s, const std::string &where)
{
    if (s == "ambient") {
        return SectionLattice::ambient;
    }
    if (s == "branch") {
        return SectionLattice::branch;
    }
    fail(where, "expected \"ambient\" or \"branch\", got \"" + s + "\"");
}

} // namespace detail

inline SectionLattice parse_section_lattice(const std::string &s)
{
    return detail::lattice_choice(s, "--section-lattice");
}

inline InputSpec parse_input(const std::string &text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        detail::fail("byte " + std::to_string(e.byte), "malformed JSON");
    }
    if (!j.is_object()) {
        detail::fail("document", "expected an object");
    }
    InputSpec in;
    const std::string mode = j.value("mode", std::string("qo"));
    if (mode == "qo") {
        in.data.mode = Mode::qo;
    } else if (mode == "toric") {
        in.data.mode = Mode::toric;
    } else {
        detail::fail("mode", "expected \"qo\" or \"toric\", got \"" + mode + "\"");
    }
    if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<long>() < 1) {
        detail::fail("d", "expected a positive integer");
    }
    in.data.d = j["d"].get<std::size_t>();
    const char *key = in.data.mode == Mode::qo ? "exponents" : "generators";
    if (!j.contains(key)) {
        detail::fail(key, "missing");
    }
    const json &list = j[key];
    if (!list.is_array()) {
        detail::fail(key, "expected a list of vectors");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
        if (!list[i].is_array() || list[i].size() != in.data.d) {
            detail::fail(where, "expected " + std::to_string(in.data.d) + " entries");
        }
        RatVec v;
        for (std::size_t c = 0; c < in.data.d; ++c) {
            v.push_back(detail::rat_field(list[i][c], where + "[" + std::to_string(c) + "]"));
        }
        in.data.exponents.push_back(v);
    }
    if (j.contains("options")) {
        const json &o = j["options"];
        if (!o.is_object()) {
            detail::fail("options", "expected an object");
        }
        if (o.contains("section_lattice")) {
            if (!o["section_lattice"].is_string()) {
                detail::fail("options.section_lattice", "expected a string");
            }
            in.section_lattice = detail::lattice_choice(o["section_lattice"].get<std::string>(), "options.section_lattice");
        }
        if (o.contains("box_limit")) {
            if (!o["box_limit"].is_number_unsigned() || o["box_limit"].get<std::uint64_t>() == 0) {
                detail::fail("options.box_limit", "expected a positive integer");
            }
            in.box_limit = o["box_limit"].get<std::uint64_t>();
        }
        if (o.contains("guard")) {
            if (!o["guard"].is_number_integer() || o["guard"].get<long>() < 0) {
                detail::fail("options.guard", "expected a non-negative integer");
            }
            in.guard = o["guard"].get<long>();
        }
    }
    return in;
}

inline InputSpec read_input(const std::string &path)
{
    std::ifstream f(path);
    if (!f) {
        throw Error(ErrorCode::ParseError, path + ": cannot open");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return parse_input(ss.str());
    } catch (const Error &e) {
        throw Error(e.code(), path + ": " + e.detail());
    }
}

/// Integers that fit in 64 bits stay numbers, larger ones become strings.
inline json int_json(const Int &z)
{
    if (z.fits_slong_p()) {
        return z.get_si();
    }
    return z.get_str();
}

inline json rat_json(const Rat &q)
{
    return q.get_str();
}

inline json vec_json(const RatVec &v)
{
    json a = json::array();
    for (const auto &x : v) {
        a.push_back(rat_json(x));
    }
    return a;
}

inline json lpoly_json(const LPoly &p)
{
    json a = json::array();
    for (const auto &[e, c] : p.terms()) {
        a.push_back(json::array({e, int_json(c)}));
    }
    return a;
}

inline json bivrat_json(const BivRat &r)
{
    json num = json::array();
    for (const auto &[k, c] : r.numerator().terms()) {
        num.push_back(json::array({k.second, k.first, int_json(c)}));
    }
    json den = json::array();
    for (const auto &[f, m] : r.denominator()) {
        den.push_back(json::array({f.a, f.b, m}));
    }
    return json{{"numerator", num}, {"denominator", den}};
}

/// Volume: numerator [[lExp, coeff]], denominator [[c, mult]] for (1 - L^{-c}).
inline json volume_json(const LVolRat &v)
{
    json den = json::array();
    for (const auto &[c, m] : v.denominator()) {
        den.push_back(json::array({c, m}));
    }
    return json{{"numerator", lpoly_json(v.numerator())}, {"denominator", den}};
}

inline json poles_json(const PoleSet &p)
{
    json a = json::array();
    for (const auto &[x, y] : p) {
        a.push_back(json::array({x, y}));
    }
    return a;
}

inline std::string vec_text(const RatVec &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + v[i].get_str();
    }
    return s + ")";
}

inline std::string poles_text(const PoleSet &p)
{
    std::string s = "{";
    bool first = true;
    for (const auto &[x, y] : p) {
        s += (first ? "" : ", ") + std::string("(") + std::to_string(x) + "," + std::to_string(y) + ")";
        first = false;
    }
    return s + "}";
}

inline std::string lattice_text(const Lattice &l)
{
    std::string s = "Z<";
    const RatMat b = l.basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
        s += (i ? ", " : "") + vec_text(b[i]);
    }
    return s + ">";
}

inline json lattice_json(const Lattice &l)
{
    json a = json::array();
    for (const auto &row : l.basis()) {
        a.push_back(vec_json(row));
    }
    return a;
}

} // namespace qomp::io

#endif
