#include "cli.hpp"
#include "figures.hpp"

#include <spectratope/spectratope.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace spectratope::cli {

namespace {

using io::Json;

/// An input or usage problem attributable to one flag or file; always exit 2.
struct InputError {
    std::string message;
};

struct Options {
    unsigned n = 0;
    std::size_t order = 0;
    std::size_t next = 0;
    std::string matrix;
    std::string certificate;
    std::string hrep;
    std::string spectrum;
    std::string vector;
    unsigned walsh_n = 0;
    std::string format;
    std::string out;
    int decimal = -1;
    std::string set;
    std::string figure;
    std::string a = "1/2";
    std::size_t k = 0;
    std::size_t l = 0;
    std::string method = "auto";
};

struct Result {
    std::string body;
    int code = 0;
};

template <typename F>
auto with_flag(const std::string& flag, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        throw InputError{flag + ": " + e.what()};
    }
}

std::string read_source(const std::string& flag, const std::string& path, std::istream& in)
{
    std::ostringstream buffer;
    if (path == "-") {
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) {
        throw InputError{flag + ": cannot open file '" + path + "'"};
    }
    buffer << file.rdbuf();
    return buffer.str();
}

Json parse_json(const std::string& flag, const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError{flag + ": invalid JSON (" + e.what() + ")"};
    }
}

RatMatrix load_matrix(const Options& o, std::istream& in)
{
    const std::string text = read_source("--matrix", o.matrix, in);
    return with_flag("--matrix " + o.matrix, [&] { return io::parse_matrix_text(text); });
}

HRep load_hrep(const Options& o, std::istream& in)
{
    const Json j = parse_json("--hrep " + o.hrep, read_source("--hrep", o.hrep, in));
    return with_flag("--hrep " + o.hrep, [&] {
        try {
            return io::hrep_from_json(j);
        } catch (const Json::exception& e) {
            throw Error(ErrorCode::Parse, e.what());
        }
    });
}

RatVector parse_list(const std::string& flag, const std::string& text)
{
    return with_flag(flag, [&] { return parse_rational_list(text); });
}

std::string dump(const Json& j) { return io::pretty(j); }

std::string render_matrix(const RatMatrix& m, const Options& o)
{
    const std::string format = o.format.empty() ? (o.decimal >= 0 ? "decimal" : "json") : o.format;
    if (format == "json") {
        return dump(io::to_json(m));
    }
    if (format == "csv") {
        return io::matrix_csv(m);
    }
    if (format == "pm") {
        return with_flag("--format pm", [&] { return format_pm(m); });
    }
    return io::matrix_text(m, o.decimal >= 0 ? o.decimal : 6);
}

std::string render_hrep(const HRep& h, const Options& o)
{
    if (o.format == "csv") {
        return io::hrep_csv(h);
    }
    if (!o.format.empty() && o.format != "json") {
        throw InputError{"--format: H-representations are emitted as json or csv"};
    }
    return dump(io::to_json(h));
}

std::string render_vertices(const std::vector<RatVector>& vertices, std::size_t dim, const Options& o)
{
    if (o.format == "csv") {
        return io::vertices_csv(vertices, dim);
    }
    if (!o.format.empty() && o.format != "json") {
        throw InputError{"--format: vertex lists are emitted as json or csv"};
    }
    Json arr = Json::array();
    for (const auto& v : vertices) {
        arr.push_back(io::to_json(v));
    }
    return dump(arr);
}

HRep polytope_of(const RatMatrix& s, const std::string& set)
{
    if (set == "C") {
        return spectracone_hrep(s);
    }
    if (set == "W") {
        return wpolytope_hrep(s);
    }
    if (set == "P" || set.empty()) {
        return spectratope_hrep(s);
    }
    if (set == "P1") {
        return project_p1(s);
    }
    throw InputError{"--set: expected C, W, P or P1, got '" + set + "'"};
}

Result cmd_walsh(const Options& o) { return {render_matrix(walsh(o.n).matrix, o)}; }

Result cmd_hadamard(const Options& o, const CLI::App& app, std::istream& in)
{
    if (app.count("--next") > 0) {
        const std::size_t next = next_hadamard_order(o.next);
        return {dump(Json{{"order", o.next},
                          {"supported", is_supported_hadamard_order(o.next)},
                          {"next", next},
                          {"padding", next - o.next}})};
    }
    if (app.count("--matrix") > 0) {
        const std::string text = read_source("--matrix", o.matrix, in);
        const bool pm = text.find_first_not_of("+- \t\r\n") == std::string::npos;
        const RatMatrix h = with_flag("--matrix " + o.matrix,
                                      [&] { return pm ? parse_pm(text) : io::parse_matrix_text(text); });
        return {render_matrix(with_flag("--matrix " + o.matrix, [&] { return normalize_hadamard(h).matrix; }), o)};
    }
    return {render_matrix(with_flag("--order", [&] { return hadamard_of_order(o.order).matrix; }), o)};
}

Result cmd_classify(const Options& o, std::istream& in)
{
    const RatMatrix s = load_matrix(o, in);
    const PerronSimilarity p = with_flag("--matrix " + o.matrix, [&] { return classify(s); });
    Json indices = Json::array();
    for (auto i : p.perron_indices) {
        indices.push_back(i + 1);
    }
    Json out{{"perron_similarity", p.is_perron_similarity()}, {"perron_indices", indices}};
    out["strong_index"] = p.strong_index ? Json(*p.strong_index + 1) : Json(nullptr);
    out["m_matrix"] = is_m_matrix(s);
    if (const auto ds = doubly_stochastic_eligible(s)) {
        out["doubly_stochastic_index"] =
            Json{{"index", ds->index + 1}, {"alpha", io::to_json(ds->alpha)}, {"beta", io::to_json(ds->beta)}};
    } else {
        out["doubly_stochastic_index"] = nullptr;
    }
    out["relative_gain_array"] = io::to_json(relative_gain_array(s));
    return {dump(out), p.is_perron_similarity() ? 0 : 1};
}

Result cmd_hrep(const Options& o, std::istream& in, const std::string& verb)
{
    const RatMatrix s = load_matrix(o, in);
    const std::string set = verb == "cone" ? "C" : verb == "project" ? "P1" : (o.set.empty() ? "P" : o.set);
    if (verb == "tope" && set != "W" && set != "P") {
        throw InputError{"--set: tope accepts W or P, got '" + set + "'"};
    }
    const HRep h = with_flag("--matrix " + o.matrix, [&] { return polytope_of(s, set); });
    return {render_hrep(h, o)};
}

Result cmd_membership(const Options& o, const CLI::App& app, std::istream& in)
{
    const RatVector v = parse_list("--vector", o.vector);
    if (app.count("--walsh") > 0) {
        const RatVector c = with_flag("--vector", [&] { return walsh_cone_coefficients(o.walsh_n, v); });
        const bool member = is_nonnegative(c);
        return {dump(Json{{"member", member}, {"coefficients", io::to_json(c)}}), member ? 0 : 1};
    }
    if (app.count("--hrep") > 0) {
        const HRep h = load_hrep(o, in);
        const bool member = with_flag("--vector", [&] { return hrep_membership(h, v); });
        return {dump(Json{{"member", member}}), member ? 0 : 1};
    }
    if (app.count("--matrix") == 0) {
        throw InputError{"membership needs one of --walsh, --matrix or --hrep"};
    }
    const RatMatrix s = load_matrix(o, in);
    if (o.set.empty() || o.set == "C") {
        const ConeMembership m = with_flag("--vector", [&] { return cone_membership_direct(s, v); });
        return {dump(Json{{"member", m.member}, {"witness", io::to_json(m.witness)}}), m.member ? 0 : 1};
    }
    const HRep h = with_flag("--matrix " + o.matrix, [&] { return polytope_of(s, o.set); });
    const bool member = with_flag("--vector", [&] { return hrep_membership(h, v); });
    return {dump(Json{{"member", member}}), member ? 0 : 1};
}

Result cmd_volume(const Options& o, const CLI::App& app, std::istream& in)
{
    SimplexSpec spec;
    if (app.count("--walsh") > 0) {
        const std::string set = o.set.empty() ? "W" : o.set;
        if (set != "W" && set != "P1") {
            throw InputError{"--set: volume of a Walsh polytope needs W or P1, got '" + set + "'"};
        }
        const RatMatrix h = with_flag("--walsh", [&] { return walsh(o.walsh_n).matrix; });
        const HRep rep = polytope_of(h, set);
        spec.vertices = with_flag("--walsh", [&] { return enumerate_vertices(rep); });
        if (spec.vertices.size() != rep.dim + 1) {
            throw InputError{"--walsh: polytope has " + std::to_string(spec.vertices.size()) +
                             " vertices, not a simplex"};
        }
    } else if (app.count("--matrix") > 0) {
        const RatMatrix m = load_matrix(o, in);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            spec.vertices.emplace_back(m.row(i).begin(), m.row(i).end());
        }
    } else {
        throw InputError{"volume needs one of --matrix or --walsh"};
    }
    const Rational vol = with_flag(app.count("--walsh") > 0 ? "--walsh" : "--matrix " + o.matrix,
                                   [&] { return simplex_volume(spec); });
    Json out{{"volume", io::to_json(vol)}};
    if (o.decimal >= 0) {
        out["decimal"] = to_decimal(vol, o.decimal);
    }
    return {dump(out)};
}

Result cmd_vertices(const Options& o, const CLI::App& app, std::istream& in)
{
    if (app.count("--figure") > 0) {
        const Rational a = with_flag("--a", [&] { return parse_rational(o.a); });
        if (a < 0 || a > 1) {
            throw InputError{"--a: parameter must lie in [0, 1]"};
        }
        return {with_flag("--figure", [&] { return figures::figure_csv(figures::figure_regions(o.figure, a)); })};
    }
    HRep h;
    if (app.count("--hrep") > 0) {
        h = load_hrep(o, in);
    } else if (app.count("--walsh") > 0) {
        h = polytope_of(with_flag("--walsh", [&] { return walsh(o.walsh_n).matrix; }), o.set);
    } else if (app.count("--matrix") > 0) {
        const RatMatrix s = load_matrix(o, in);
        h = with_flag("--matrix " + o.matrix, [&] { return polytope_of(s, o.set); });
    } else {
        throw InputError{"vertices needs one of --hrep, --matrix, --walsh or --figure"};
    }
    const auto vertices = with_flag("vertices", [&] { return enumerate_vertices(h); });
    return {render_vertices(vertices, h.dim, o)};
}

Result cmd_realize(const Options& o)
{
    const RatVector raw = parse_list("--spectrum", o.spectrum);
    RealizationCertificate c;
    try {
        if (o.method == "auto") {
            c = realize_auto(raw);
        } else {
            const Spectrum sigma = with_flag("--spectrum", [&] { return Spectrum(raw); });
            const Method m = with_flag("--method", [&] { return parse_method(o.method); });
            switch (m) {
            case Method::N2: c = realize_n2(sigma); break;
            case Method::N3: c = realize_n3(sigma); break;
            case Method::N3Symmetric: c = realize_n3_symmetric(sigma); break;
            case Method::N4Blocks:
            case Method::N4Walsh: c = realize_n4(sigma); break;
            case Method::Suleimanova: c = realize_suleimanova(sigma, hadamard_of_order(sigma.size())); break;
            case Method::SuleimanovaPadded: c = realize_suleimanova_padded(sigma); break;
            }
        }
    } catch (const RealizationError& e) {
        return {dump(Json{{"realizable", false},
                          {"reason", to_string(e.code())},
                          {"detail", e.what()},
                          {"conditions", io::to_json(e.report())}}),
                1};
    } catch (const Error& e) {
        throw InputError{"--spectrum: " + std::string(e.what())};
    }
    if (o.format == "decimal" || (o.format.empty() && o.decimal >= 0)) {
        return {io::matrix_text(c.realizer, o.decimal >= 0 ? o.decimal : 6)};
    }
    Json out = io::to_json(c);
    out["spectrum"] = io::to_json(Spectrum(raw).values());
    return {dump(out)};
}

Result cmd_verify(const Options& o, std::istream& in)
{
    const Json j = parse_json("--certificate " + o.certificate, read_source("--certificate", o.certificate, in));
    const RealizationCertificate c =
        with_flag("--certificate " + o.certificate, [&] { return io::certificate_from_json(j); });
    RatVector values;
    if (!o.spectrum.empty()) {
        values = parse_list("--spectrum", o.spectrum);
    } else if (j.contains("spectrum")) {
        values = with_flag("--certificate " + o.certificate, [&] { return io::vector_from_json(j.at("spectrum")); });
    } else {
        throw InputError{"--spectrum: certificate carries no spectrum; pass one explicitly"};
    }
    const Spectrum sigma = with_flag("--spectrum", [&] { return Spectrum(values); });
    const VerificationReport report = verify_certificate(c, sigma);
    return {dump(io::to_json(report)), report.passed() ? 0 : 1};
}

Result cmd_scheme(const Options& o, const CLI::App& app)
{
    if (o.k == 0) {
        throw InputError{"--k: indices are 1-based"};
    }
    if (app.count("--l") > 0) {
        if (o.l == 0) {
            throw InputError{"--l: indices are 1-based"};
        }
        const std::size_t j = with_flag("--k/--l", [&] { return scheme_index_product(o.n, o.k - 1, o.l - 1); });
        return {dump(Json{{"n", o.n}, {"k", o.k}, {"l", o.l}, {"product", j + 1}})};
    }
    const Permutation p = with_flag("--k", [&] { return perm_basis(o.n, o.k - 1); });
    Json image = Json::array();
    for (auto i : p.image()) {
        image.push_back(i + 1);
    }
    Json out{{"n", o.n}, {"k", o.k}, {"image", image}};
    if (o.format == "json" || o.format.empty()) {
        out["matrix"] = io::to_json(p.to_matrix<Rational>());
        return {dump(out)};
    }
    return {render_matrix(p.to_matrix<Rational>(), o)};
}

void add_format(CLI::App* cmd, Options& o, std::vector<std::string> allowed)
{
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(std::move(allowed)));
    cmd->add_option("--out", o.out, "Write output to this path instead of stdout");
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact Perron spectracones, spectratopes and certified nonnegative realizations", "spectratope"};
    app.require_subcommand(1, 1);

    auto* walsh_cmd = app.add_subcommand("walsh", "Walsh matrix H_n");
    walsh_cmd->add_option("--n", o.n, "Exponent n (order 2^n)")->required();
    walsh_cmd->add_option("--decimal", o.decimal, "Render k-digit decimals");
    add_format(walsh_cmd, o, {"json", "csv", "pm", "decimal"});

    auto* hadamard_cmd = app.add_subcommand("hadamard", "Normalized Hadamard matrices");
    auto* order_opt = hadamard_cmd->add_option("--order", o.order, "Build a normalized Hadamard matrix of this order");
    auto* next_opt = hadamard_cmd->add_option("--next", o.next, "Report the next supported order >= m");
    auto* had_matrix = hadamard_cmd->add_option("--matrix", o.matrix, "Normalize the Hadamard matrix in this file");
    order_opt->excludes(next_opt)->excludes(had_matrix);
    next_opt->excludes(had_matrix);
    hadamard_cmd->add_option("--decimal", o.decimal, "Render k-digit decimals");
    add_format(hadamard_cmd, o, {"json", "csv", "pm", "decimal"});

    auto* classify_cmd = app.add_subcommand("classify", "Perron similarity classification");
    classify_cmd->add_option("--matrix", o.matrix, "Basis S (file or -)")->required();

    auto* cone_cmd = app.add_subcommand("cone", "H-representation of the spectracone C(S)");
    cone_cmd->add_option("--matrix", o.matrix, "Basis S (file or -)")->required();
    add_format(cone_cmd, o, {"json", "csv"});

    auto* tope_cmd = app.add_subcommand("tope", "H-representation of W(S) or P(S)");
    tope_cmd->add_option("--matrix", o.matrix, "Basis S (file or -)")->required();
    tope_cmd->add_option("--set", o.set, "W or P (default P)");
    add_format(tope_cmd, o, {"json", "csv"});

    auto* project_cmd = app.add_subcommand("project", "H-representation of the projection P^1(S)");
    project_cmd->add_option("--matrix", o.matrix, "Basis S (file or -)")->required();
    add_format(project_cmd, o, {"json", "csv"});

    auto* membership_cmd = app.add_subcommand("membership", "Membership of a vector");
    auto* mem_walsh = membership_cmd->add_option("--walsh", o.walsh_n, "Test against C(H_n)");
    auto* mem_matrix = membership_cmd->add_option("--matrix", o.matrix, "Basis S (file or -)");
    auto* mem_hrep = membership_cmd->add_option("--hrep", o.hrep, "H-representation JSON (file or -)");
    mem_walsh->excludes(mem_matrix)->excludes(mem_hrep);
    mem_matrix->excludes(mem_hrep);
    membership_cmd->add_option("--set", o.set, "With --matrix: C, W, P or P1 (default C)");
    membership_cmd->add_option("--vector", o.vector, "Comma-separated rationals")->required();

    auto* volume_cmd = app.add_subcommand("volume", "Volume of a simplex");
    auto* vol_matrix = volume_cmd->add_option("--matrix", o.matrix, "Vertices, one per row (file or -)");
    auto* vol_walsh = volume_cmd->add_option("--walsh", o.walsh_n, "Use W(H_n) or P^1(H_n)");
    vol_matrix->excludes(vol_walsh);
    volume_cmd->add_option("--set", o.set, "With --walsh: W or P1 (default W)");
    volume_cmd->add_option("--decimal", o.decimal, "Also report k-digit decimals");

    auto* vertices_cmd = app.add_subcommand("vertices", "Vertex enumeration and figure data");
    auto* vx_hrep = vertices_cmd->add_option("--hrep", o.hrep, "H-representation JSON (file or -)");
    auto* vx_matrix = vertices_cmd->add_option("--matrix", o.matrix, "Basis S (file or -)");
    auto* vx_walsh = vertices_cmd->add_option("--walsh", o.walsh_n, "Use H_n as the basis");
    auto* vx_figure = vertices_cmd->add_option("--figure", o.figure, "fig1, fig2 or fig3");
    vx_hrep->excludes(vx_matrix)->excludes(vx_walsh)->excludes(vx_figure);
    vx_matrix->excludes(vx_walsh)->excludes(vx_figure);
    vx_walsh->excludes(vx_figure);
    vertices_cmd->add_option("--set", o.set, "W, P or P1 (default P)");
    vertices_cmd->add_option("--a", o.a, "Parameter a in [0, 1] for fig2 (default 1/2)");
    add_format(vertices_cmd, o, {"json", "csv"});

    auto* realize_cmd = app.add_subcommand("realize", "Certified nonnegative realization of a spectrum");
    realize_cmd->add_option("--spectrum", o.spectrum, "Comma-separated rationals")->required();
    realize_cmd->add_option("--method", o.method, "auto (default) or a construction name");
    realize_cmd->add_option("--decimal", o.decimal, "Print the realizer with k-digit decimals");
    add_format(realize_cmd, o, {"json", "decimal"});

    auto* verify_cmd = app.add_subcommand("verify", "Re-check a realization certificate");
    verify_cmd->add_option("--certificate", o.certificate, "Certificate JSON (file or -)")->required();
    verify_cmd->add_option("--spectrum", o.spectrum, "Spectrum (defaults to the certificate's)");

    auto* scheme_cmd = app.add_subcommand("scheme", "Walsh association scheme permutations");
    scheme_cmd->add_option("--n", o.n, "Exponent n")->required();
    scheme_cmd->add_option("--k", o.k, "1-based index k")->required();
    scheme_cmd->add_option("--l", o.l, "1-based index l: report the index of P_k P_l");
    add_format(scheme_cmd, o, {"json", "csv", "decimal"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Result result;
    try {
        if (*walsh_cmd) {
            result = with_flag("--n", [&] { return cmd_walsh(o); });
        } else if (*hadamard_cmd) {
            if (hadamard_cmd->count("--order") + hadamard_cmd->count("--next") + hadamard_cmd->count("--matrix") != 1) {
                throw InputError{"hadamard needs exactly one of --order, --next or --matrix"};
            }
            result = cmd_hadamard(o, *hadamard_cmd, in);
        } else if (*classify_cmd) {
            result = cmd_classify(o, in);
        } else if (*cone_cmd) {
            result = cmd_hrep(o, in, "cone");
        } else if (*tope_cmd) {
            result = cmd_hrep(o, in, "tope");
        } else if (*project_cmd) {
            result = cmd_hrep(o, in, "project");
        } else if (*membership_cmd) {
            result = cmd_membership(o, *membership_cmd, in);
        } else if (*volume_cmd) {
            result = cmd_volume(o, *volume_cmd, in);
        } else if (*vertices_cmd) {
            result = cmd_vertices(o, *vertices_cmd, in);
        } else if (*realize_cmd) {
            result = cmd_realize(o);
        } else if (*verify_cmd) {
            result = cmd_verify(o, in);
        } else if (*scheme_cmd) {
            result = cmd_scheme(o, *scheme_cmd);
        }
    } catch (const InputError& e) {
        err << "error: " << e.message << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (!o.out.empty()) {
        std::ofstream file(o.out);
        if (!file || !(file << result.body)) {
            err << "error: --out: cannot write '" << o.out << "'\n";
            return 2;
        }
    } else {
        out << result.body;
    }
    return result.code;
}

} // namespace spectratope::cli
