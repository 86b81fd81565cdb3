#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "diagform/decomp.hpp"
#include "diagform/errors.hpp"
#include "diagform/form.hpp"

namespace diagform::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string polynomial;
    std::string mode = "exact";
    std::vector<long> adjoin;
    int max_adjoin = 2;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    bool json_out = true;
    bool text_out = false;
    bool odeco_only = false;
    std::string tensor_file;
    std::size_t nvars = 0;
};

std::string y_names(std::string s)
{
    std::replace(s.begin(), s.end(), 'x', 'y');
    return s;
}

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j).to_string());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json algebra_json(const AlgebraDescription& a)
{
    json factors = json::array();
    for (const auto& f : a.factors) {
        factors.push_back({{"kind", to_string(f.kind)},
                           {"dim", f.dim},
                           {"polynomial", f.kind == AlgebraFactor::Kind::ground ? json(nullptr) : json(f.poly.to_string())},
                           {"discriminant", f.discriminant ? json(*f.discriminant) : json(nullptr)},
                           {"nilpotency", f.nilpotency}});
    }
    return {{"description", a.to_string()}, {"factors", std::move(factors)}};
}

json empty_report(const std::string& input, const Options& o)
{
    return {{"input", input},         {"mode", o.mode},          {"field", nullptr},          {"n", nullptr},
            {"d", nullptr},           {"rank", nullptr},         {"center_dim", nullptr},     {"center_algebra", nullptr},
            {"verdict", nullptr},     {"lambdas", nullptr},      {"forms", nullptr},          {"L", nullptr},
            {"P", nullptr},           {"blocks", nullptr},       {"ortho", nullptr},          {"scaling_in_field", nullptr},
            {"odeco_precheck", nullptr}, {"verify", nullptr},    {"certificates", json::array()},
            {"seed", o.seed},         {"timing_ms", nullptr}};
}

Form read_tensor(const std::string& path, const FieldConfig& cfg, std::size_t nvars)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open tensor file " + path);
    }
    const json doc = json::parse(in);
    if (!doc.is_array() || doc.empty()) {
        throw SyntaxError("tensor file must hold a non-empty JSON list of {index, value} entries");
    }
    const FieldPtr field = Field::make(cfg);
    std::size_t order = 0;
    std::size_t n = nvars;
    for (const auto& e : doc) {
        const auto& idx = e.at("index");
        if (order == 0) {
            order = idx.size();
        } else if (idx.size() != order) {
            throw DimensionMismatch("tensor entries of different orders");
        }
        for (const auto& i : idx) {
            const long v = i.get<long>();
            if (v < 1) {
                throw IndexOutOfRange("tensor indices start at 1");
            }
            if (nvars == 0) {
                n = std::max(n, static_cast<std::size_t>(v));
            } else if (static_cast<std::size_t>(v) > nvars) {
                throw IndexOutOfRange("tensor index " + std::to_string(v) + " exceeds --nvars");
            }
        }
    }
    if (order < 3) {
        throw DegreeTooLow("tensor order " + std::to_string(order) + " is below 3");
    }
    SymTensor a(n, static_cast<unsigned>(order));
    for (const auto& e : doc) {
        MultiIndex idx;
        for (const auto& i : e.at("index")) {
            idx.push_back(i.get<int>() - 1);
        }
        const auto& v = e.at("value");
        const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
        a.set(idx, parse_scalar(text, field));
    }
    return form_from_gram(a);
}

void write_text(std::ostream& out, const json& r)
{
    auto show = [](const json& v) { return v.is_null() ? std::string("null") : v.is_string() ? v.get<std::string>() : v.dump(); };
    out << "input: " << show(r["input"]) << "\n";
    out << "field: " << show(r["field"]) << "\n";
    out << "n = " << show(r["n"]) << ", d = " << show(r["d"]) << ", rank = " << show(r["rank"]) << "\n";
    if (!r["center_algebra"].is_null()) {
        out << "center: dim " << show(r["center_dim"]) << ", " << r["center_algebra"]["description"].get<std::string>()
            << "\n";
    }
    out << "verdict: " << show(r["verdict"]) << "\n";
    if (!r["lambdas"].is_null()) {
        for (std::size_t i = 0; i < r["lambdas"].size(); ++i) {
            const std::string lambda = r["lambdas"][i].get<std::string>();
            const bool compound = lambda.find_first_of("+-", 1) != std::string::npos;
            out << "  " << (compound ? "(" + lambda + ")" : lambda) << " * (" << r["forms"][i].get<std::string>() << ")^"
                << show(r["d"]) << "\n";
        }
    }
    if (!r["blocks"].is_null() && r["verdict"] != "diagonalizable") {
        for (const auto& b : r["blocks"]) {
            out << "  block " << b["variables"].dump() << ": " << b["x_form"].get<std::string>() << "\n";
        }
    }
    out << "ortho: " << show(r["ortho"]) << ", scaling_in_field: " << show(r["scaling_in_field"]) << "\n";
    out << "odeco_precheck: " << show(r["odeco_precheck"]) << "\n";
    out << "verify: " << show(r["verify"]) << "\n";
    for (const auto& c : r["certificates"]) {
        out << "certificate: " << c.get<std::string>() << "\n";
    }
}

json decompose_report(const Options& o, const FieldConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    const std::string input = o.tensor_file.empty() ? o.polynomial : "tensor:" + o.tensor_file;
    json r = empty_report(input, o);
    const std::optional<std::size_t> nvars = o.nvars ? std::optional<std::size_t>(o.nvars) : std::nullopt;
    const Form f = o.tensor_file.empty() ? parse_form(o.polynomial, cfg, nvars) : read_tensor(o.tensor_file, cfg, o.nvars);
    r["n"] = f.nvars();
    r["d"] = f.degree();
    if (o.tensor_file.empty()) {
        r["input"] = o.polynomial;
    }

    try {
        r["odeco_precheck"] = odeco_precheck(gram_tensor(f));
    } catch (const NotReal&) {
        r["odeco_precheck"] = nullptr;
    }
    if (o.odeco_only) {
        FieldPtr field = Field::make(cfg);
        for (const auto& [e, c] : f.terms()) {
            field = common_field(field, c.field());
        }
        r["field"] = field->describe();
        r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

    DecomposeOptions opts;
    opts.seed = o.seed;
    const Decomposition dec = decompose(f, cfg, opts);
    r["field"] = dec.field->describe();
    r["rank"] = dec.rank;
    r["center_dim"] = dec.center_dim;
    r["center_algebra"] = algebra_json(dec.center_algebra);
    r["verdict"] = to_string(dec.verdict);
    r["P"] = matrix_json(dec.P);
    if (dec.L.rows() > 0) {
        json lambdas = json::array();
        json forms = json::array();
        for (std::size_t i = 0; i < dec.L.rows(); ++i) {
            lambdas.push_back(dec.lambdas[i].to_string());
            forms.push_back(linear_form(dec.L.row(i)).to_string());
        }
        r["lambdas"] = std::move(lambdas);
        r["forms"] = std::move(forms);
        r["L"] = matrix_json(dec.L);
    }
    json blocks = json::array();
    for (const auto& b : dec.blocks) {
        json vars = json::array();
        for (auto c : b.columns) {
            vars.push_back(c + 1);
        }
        blocks.push_back({{"variables", std::move(vars)},
                          {"form", y_names(b.form.to_string())},
                          {"x_form", b.x_form.to_string()},
                          {"center_dim", b.center_dim},
                          {"center_algebra", algebra_json(b.center_algebra)},
                          {"resolved", b.resolved}});
    }
    r["blocks"] = std::move(blocks);
    r["ortho"] = to_string(dec.ortho);
    if (dec.scaling_in_field) {
        r["scaling_in_field"] = *dec.scaling_in_field;
    }
    r["verify"] = verify(dec, f);
    r["certificates"] = dec.certificates;
    r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

const char* error_kind(const Error& e)
{
    if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
    if (dynamic_cast<const NotHomogeneous*>(&e)) return "NotHomogeneous";
    if (dynamic_cast<const DegreeTooLow*>(&e)) return "DegreeTooLow";
    if (dynamic_cast<const FieldError*>(&e)) return "FieldError";
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const IndexOutOfRange*>(&e)) return "IndexOutOfRange";
    if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
    return "Error";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Decide and compute diagonalizations of higher degree forms", "diagform"};
    app.require_subcommand(1);
    Options o;
    auto* dec = app.add_subcommand("decompose", "Run the decomposition pipeline on one form");
    dec->add_option("polynomial", o.polynomial, "Form in x1..xn, e.g. \"x1^4+x2^4+6*x1^2*x2^2\"");
    dec->add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    dec->add_option("--adjoin", o.adjoin, "Adjoin sqrt(m) to the field (repeatable)")->allow_extra_args(false);
    dec->add_option("--max-adjoin", o.max_adjoin, "Radicands the splitter may adjoin on its own")
        ->check(CLI::NonNegativeNumber);
    dec->add_option("--tol", o.tol, "Absolute tolerance in float mode")->check(CLI::PositiveNumber);
    dec->add_option("--seed", o.seed, "Seed for the random center elements");
    auto* json_flag = dec->add_flag("--json", o.json_out, "JSON report (default)");
    auto* text_flag = dec->add_flag("--text", o.text_out, "Plain text report");
    json_flag->excludes(text_flag);
    dec->add_flag("--odeco-only", o.odeco_only, "Only run the commuting-slices screen");
    dec->add_option("--tensor", o.tensor_file, "JSON list of {index: [i1..id], value} entries");
    dec->add_option("--nvars", o.nvars, "Number of variables (default: highest index)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    if (dec->parsed() && o.polynomial.empty() == o.tensor_file.empty()) {
        err << "error: give exactly one of a polynomial or --tensor\n";
        return kInputError;
    }

    try {
        FieldConfig cfg = o.mode == "float" ? FieldConfig::floating(o.tol) : FieldConfig::tower(o.adjoin, o.max_adjoin);
        if (o.mode == "float" && !o.adjoin.empty()) {
            throw FieldError("--adjoin has no meaning in float mode");
        }
        cfg.validate();
        const json report = decompose_report(o, cfg);
        if (o.text_out) {
            write_text(out, report);
        } else {
            out << report.dump(2) << "\n";
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << error_kind(e) << ": " << e.what() << "\n";
        return kInputError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}

} // namespace diagform::cli
