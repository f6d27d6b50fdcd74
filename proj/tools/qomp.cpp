#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qomp_io.hpp"

using namespace qomp;
using io::json;

namespace
{

enum Exit { ok = 0, invalid = 2, inconsistent = 3, budget = 4 };

int exit_code(ErrorCode c)
{
    switch (c) {
        case ErrorCode::BudgetExceeded:
            return budget;
        case ErrorCode::InternalInconsistency:
        case ErrorCode::NonPolynomialCoefficient:
        case ErrorCode::NotStabilized:
            return inconsistent;
        default:
            return invalid;
    }
}

std::string hint(ErrorCode c)
{
    switch (c) {
        case ErrorCode::BudgetExceeded:
            return "raise --box-limit or lower --order";
        case ErrorCode::NotStabilized:
            return "raise --guard or --box-limit";
        default:
            return "";
    }
}

struct Common {
    std::string input;
    std::string format = "text";
    std::string section_lattice;
    std::uint64_t box_limit = 0;
    long guard = -1;
};

struct Loaded {
    io::InputSpec spec;
    AssemblyOptions opt;
};

Loaded load(const Common &c)
{
    Loaded l;
    l.spec = io::read_input(c.input);
    l.opt.section_lattice = l.spec.section_lattice;
    l.opt.oracle.box_limit = l.spec.box_limit;
    l.opt.guard = l.spec.guard;
    if (!c.section_lattice.empty()) {
        l.opt.section_lattice = io::parse_section_lattice(c.section_lattice);
    }
    if (c.box_limit > 0) {
        l.opt.oracle.box_limit = c.box_limit;
    }
    if (c.guard >= 0) {
        l.opt.guard = c.guard;
    }
    return l;
}

void emit(const Common &c, const json &j, const std::string &text)
{
    if (c.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string mode_name(Mode m)
{
    return m == Mode::qo ? "qo" : "toric";
}

int cmd_validate(const Common &c)
{
    const Loaded l = load(c);
    const Validated v = validate(l.spec.data);
    std::ostringstream t;
    json j;
    j["mode"] = mode_name(v.data.mode);
    j["d"] = v.data.d;
    t << "mode " << mode_name(v.data.mode) << ", d = " << v.data.d << "\n";
    if (v.data.exponents.empty()) {
        t << "no characteristic exponents: smooth germ\n";
    }
    json ex = json::array();
    for (std::size_t i = 0; i < v.data.exponents.size(); ++i) {
        ex.push_back(io::vec_json(v.data.exponents[i]));
        t << (v.data.mode == Mode::qo ? "lambda_" : "v_") << i + 1 << " = " << io::vec_text(v.data.exponents[i])
          << "\n";
    }
    j[v.data.mode == Mode::qo ? "exponents" : "generators"] = ex;
    json perm = json::array();
    bool moved = false;
    for (std::size_t i = 0; i < v.permutation.size(); ++i) {
        perm.push_back(v.permutation[i]);
        moved = moved || v.permutation[i] != i;
    }
    j["permutation"] = perm;
    if (moved) {
        t << "coordinates relabelled:";
        for (auto p : v.permutation) {
            t << " x" << p + 1;
        }
        t << "\n";
    }
    json chain = json::array();
    for (std::size_t i = 0; i < v.lattices.chain.size(); ++i) {
        chain.push_back(io::lattice_json(v.lattices.chain[i]));
        t << "M_" << i << " = " << io::lattice_text(v.lattices.chain[i]) << "\n";
    }
    json idx = json::array();
    if (!v.lattices.indices.empty()) {
        t << "indices n =";
        for (const auto &n : v.lattices.indices) {
            idx.push_back(io::int_json(n));
            t << " " << n.get_str();
        }
        t << "\n";
    }
    j["chain"] = chain;
    j["indices"] = idx;
    j["M"] = io::lattice_json(v.lattices.M);
    j["N"] = io::lattice_json(v.lattices.N);
    t << "M = " << io::lattice_text(v.lattices.M) << "\n";
    t << "N = " << io::lattice_text(v.lattices.N) << "\n";
    j["warnings"] = v.warnings;
    for (const auto &w : v.warnings) {
        t << "warning: " << w << "\n";
    }
    emit(c, j, t.str());
    return ok;
}

int cmd_report(const Common &c)
{
    const Loaded l = load(c);
    const Validated v = validate(l.spec.data);
    const LogJacSystem sys(v);
    std::ostringstream t;
    json j;
    json levels = json::array();
    for (std::size_t k = 1; k <= sys.d(); ++k) {
        json lv;
        lv["k"] = k;
        t << "J_" << k << " generators:";
        json gens = json::array();
        for (const auto &g : sys.J(k).generators) {
            gens.push_back(io::vec_json(g));
            t << " " << io::vec_text(g);
        }
        t << "\n";
        lv["generators"] = gens;
        t << "Sigma_" << k << " rays:";
        json rays = json::array();
        for (const auto &r : sys.sigma(k).rays()) {
            const RatVec p = primitive_in(to_rat(r), sys.N());
            rays.push_back(io::vec_json(p));
            t << " " << io::vec_text(p);
        }
        t << "\n";
        lv["rays"] = rays;
        json cones = json::array();
        std::size_t inner = 0;
        std::size_t collapsed = 0;
        for (const auto &dc : dk_cones(sys, k)) {
            const bool inj = k == sys.d() || detail::ords_injective(sys, k, dc.cone);
            inner += dc.interior ? 1 : 0;
            collapsed += dc.interior && !inj ? 1 : 0;
            cones.push_back(json{{"cone", dc.cone.to_string()}, {"interior", dc.interior}, {"injective", inj}});
        }
        lv["D"] = cones;
        t << "D_" << k << ": " << cones.size() << " cones, " << inner << " meeting the interior, " << collapsed
          << " needing reconstruction\n";
        levels.push_back(lv);
    }
    j["levels"] = levels;
    const PoleSet b = b_set(sys);
    j["B"] = io::poles_json(b);
    t << "B = " << io::poles_text(b) << "\n";
    json faces = json::array();
    for (const auto &s : sections(v, l.opt.section_lattice)) {
        json f;
        json keep = json::array();
        std::string ks;
        for (auto i : s.keep) {
            keep.push_back(i + 1);
            ks += (ks.empty() ? "" : ",") + std::to_string(i + 1);
        }
        f["keep"] = keep;
        f["index"] = io::int_json(s.index);
        PoleSet p{{0, 1}};
        if (s.section) {
            p = b_set(LogJacSystem(*s.section));
        }
        f["B"] = io::poles_json(p);
        faces.push_back(f);
        t << "face {" << ks << "}: index " << s.index.get_str() << ", B = " << io::poles_text(p) << "\n";
    }
    j["faces"] = faces;
    const PoleSet all = candidate_poles(v, l.opt.section_lattice);
    j["candidate_poles"] = io::poles_json(all);
    t << "candidate poles = " << io::poles_text(all) << "\n";
    emit(c, j, t.str());
    return ok;
}

std::vector<LPoly> oracle_coefficients(const Validated &v, const std::string &what, long order,
                                       const AssemblyOptions &opt)
{
    if (what == "interior") {
        auto c = series_coefficients(LogJacSystem(v), std::max(order, 1L), opt.oracle);
        c.resize(static_cast<std::size_t>(order + 1));
        return c;
    }
    std::vector<LPoly> out(static_cast<std::size_t>(order + 1));
    for (const auto &s : sections(v, opt.section_lattice)) {
        if (!s.section) {
            for (auto &x : out) {
                x += LPoly(1);
            }
            continue;
        }
        const auto part = series_coefficients(LogJacSystem(*s.section), std::max(order, 1L), opt.oracle);
        for (long i = 0; i <= order; ++i) {
            out[static_cast<std::size_t>(i)] += part[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

int cmd_series(const Common &c, const std::string &what, long order, bool order_given, const std::string &method)
{
    const Loaded l = load(c);
    const Validated v = validate(l.spec.data);
    std::ostringstream t;
    json j;
    j["what"] = what;
    j["method"] = method;
    std::vector<LPoly> closed;
    if (method != "oracle") {
        BivRat value;
        json parts = json::array();
        if (what == "interior") {
            const InteriorResult r = p_interior_detailed(LogJacSystem(v), l.opt);
            value = r.value;
            for (const auto &e : r.entries) {
                parts.push_back(json{{"k", e.k},
                                     {"cone", e.tau.to_string()},
                                     {"method", e.closed ? "closed" : "reconstructed"},
                                     {"value", io::bivrat_json(e.value)}});
                t << "P_{" << e.k << "," << e.tau.to_string() << "} [" << (e.closed ? "closed" : "reconstructed")
                  << "] = " << e.value.to_string() << "\n";
            }
        } else {
            const GeomResult g = p_geom_detailed(v, l.opt);
            value = g.value;
            for (const auto &s : g.parts) {
                json keep = json::array();
                std::string ks;
                for (auto i : s.section.keep) {
                    keep.push_back(i + 1);
                    ks += (ks.empty() ? "" : ",") + std::to_string(i + 1);
                }
                parts.push_back(json{{"keep", keep}, {"value", io::bivrat_json(s.value)}});
                t << "face {" << ks << "}: " << s.value.to_string() << "\n";
            }
        }
        j["parts"] = parts;
        j["rational"] = io::bivrat_json(value);
        t << "P = " << value.to_string() << "\n";
        if (order_given || method == "both") {
            closed = value.expand(order);
        }
    }
    std::vector<LPoly> oracle;
    if (method != "closed") {
        oracle = oracle_coefficients(v, what, order, l.opt);
    }
    json table = json::array();
    int status = ok;
    if (method == "both") {
        long mismatches = 0;
        for (long s = 0; s <= order; ++s) {
            const auto &a = closed[static_cast<std::size_t>(s)];
            const auto &b = oracle[static_cast<std::size_t>(s)];
            const bool same = a == b;
            mismatches += same ? 0 : 1;
            table.push_back(json{{"s", s}, {"closed", io::lpoly_json(a)}, {"oracle", io::lpoly_json(b)}, {"agree", same}});
            t << "T^" << s << ": " << (same ? "agree  " : "DIFFER ") << a.to_string();
            if (!same) {
                t << "  vs oracle " << b.to_string();
            }
            t << "\n";
        }
        if (mismatches == 0) {
            t << "all " << order + 1 << " coefficients agree\n";
        } else {
            t << mismatches << " of " << order + 1 << " coefficients differ\n";
            status = inconsistent;
        }
        j["agree"] = mismatches == 0;
    } else {
        const auto &coeffs = method == "oracle" ? oracle : closed;
        for (long s = 0; s < static_cast<long>(coeffs.size()); ++s) {
            table.push_back(json{{"s", s}, {"coefficient", io::lpoly_json(coeffs[static_cast<std::size_t>(s)])}});
            t << "T^" << s << ": " << coeffs[static_cast<std::size_t>(s)].to_string() << "\n";
        }
    }
    if (!table.empty()) {
        j["coefficients"] = table;
    }
    emit(c, j, t.str());
    return status;
}

int cmd_volume(const Common &c)
{
    const Loaded l = load(c);
    const LogJacSystem sys(validate(l.spec.data));
    const LVolRat vol = motivic_volume(sys);
    json j{{"volume", io::volume_json(vol)}};
    emit(c, j, "mu = " + vol.to_string() + "\n");
    return ok;
}

void add_common(CLI::App *app, Common &c)
{
    app->add_option("--input", c.input, "input JSON file")->required();
    app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app->add_option("--section-lattice", c.section_lattice, "lattice for coordinate sections")
        ->check(CLI::IsMember({"ambient", "branch"}));
    app->add_option("--box-limit", c.box_limit, "lattice points per oracle enumeration");
    app->add_option("--guard", c.guard, "extra coefficients checked by reconstruction (0: automatic)");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Motivic Poincare series of quasi-ordinary hypersurfaces"};
    app.require_subcommand(1);
    Common c;
    std::string what = "geom";
    std::string method = "closed";
    long order = 8;

    auto *v = app.add_subcommand("validate", "check the input and print the lattice chain");
    add_common(v, c);
    auto *r = app.add_subcommand("report", "ideals, fans, D_k cones and candidate poles");
    add_common(r, c);
    auto *s = app.add_subcommand("series", "rational form and expansion of the series");
    add_common(s, c);
    s->add_option("--what", what, "interior or geom")->check(CLI::IsMember({"interior", "geom"}));
    auto *order_opt = s->add_option("--order", order, "expansion order")->check(CLI::NonNegativeNumber);
    s->add_option("--method", method, "closed, oracle or both")->check(CLI::IsMember({"closed", "oracle", "both"}));
    auto *vol = app.add_subcommand("volume", "motivic volume of the arc space");
    add_common(vol, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : invalid;
    }

    try {
        if (v->parsed()) {
            return cmd_validate(c);
        }
        if (r->parsed()) {
            return cmd_report(c);
        }
        if (s->parsed()) {
            return cmd_series(c, what, order, order_opt->count() > 0, method);
        }
        return cmd_volume(c);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string h = hint(e.code());
        if (!h.empty()) {
            std::cerr << "hint: " << h << "\n";
        }
        return exit_code(e.code());
    }
}
