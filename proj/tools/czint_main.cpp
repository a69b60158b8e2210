// czint: exact intersection calculus for punctured curve data, plus a
// numerical oracle for the underlying asymptotic operator spectra.
//
// Exit codes: 0 all checks pass, 1 an invariant or verdict violation was
// found, 2 malformed input (schema, reference, or guard errors).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "czint/commands.hpp"

namespace {

using czint::Command;
using czint::Report;

std::string resolve_workspace(const std::string& path) {
    namespace fs = std::filesystem;
    if (path.empty()) return path;
    fs::path p(path);
    if (p.is_absolute() || fs::exists(p)) return path;
    if (const char* dir = std::getenv("CZINT_WORKSPACE_DIR")) {
        fs::path joined = fs::path(dir) / p;
        if (fs::exists(joined)) return joined.string();
    }
    return path;
}

void print_table(const czint::json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            print_table(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& v : j) print_table(v, prefix + "[" + std::to_string(i++) + "]", os);
    } else {
        os << prefix << " = " << j.dump() << "\n";
    }
}

void emit(const Report& rep, const std::string& format) {
    if (format == "table") {
        print_table(rep.to_json(), "", std::cout);
    } else {
        std::cout << rep.to_json().dump(2) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"intersection calculus for punctured curve data"};
    app.require_subcommand(1);

    std::string workspace_path;
    std::string format = "json";
    app.add_option("--workspace,-w", workspace_path, "workspace JSON file");
    app.add_option("--format", format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));

    Command cmd;
    auto add_opt = [&cmd](CLI::App* sub, const std::string& name, const std::string& help,
                          bool required = false) {
        auto* o = sub->add_option_function<std::string>(
            "--" + name, [&cmd, name](const std::string& v) { cmd.opts[name] = v; }, help);
        if (required) o->required();
        return o;
    };
    auto add_flag = [&cmd](CLI::App* sub, const std::string& name, const std::string& help) {
        sub->add_flag_callback(
            "--" + name, [&cmd, name]() { cmd.flags.insert(name); }, help);
    };

    auto* inv = app.add_subcommand("invariants", "orbit invariants at a cover");
    add_opt(inv, "orbit", "orbit name", true);
    add_opt(inv, "cover", "cover multiplicity (default 1)");

    auto* gin = app.add_subcommand("gin", "generalized intersection number");
    add_opt(gin, "a", "first curve", true);
    add_opt(gin, "b", "second curve");
    add_opt(gin, "mode", "cylindrical | witness | rin");
    add_flag(gin, "self", "compute gin(a, a)");

    auto* adj = app.add_subcommand("adjunction", "adjunction defect of a curve");
    add_opt(adj, "curve", "curve name", true);

    auto* check = app.add_subcommand("check", "evaluate an equivalence theorem");
    check->add_option_function<std::string>(
             "theorem", [&cmd](const std::string& v) { cmd.opts["theorem"] = v; },
             "gin-zero | no-isect | sgin-zero | embedded-projection | windpi | same-direction")
        ->required();
    add_opt(check, "a", "first curve");
    add_opt(check, "b", "second curve");
    add_opt(check, "curve", "curve for self checks");
    add_opt(check, "end-a", "end index in a (same-direction)");
    add_opt(check, "end-b", "end index in b (same-direction)");
    add_flag(check, "same-direction", "assert same-direction approach");

    auto* concat = app.add_subcommand("concat", "concatenation defect of two buildings");
    add_opt(concat, "u1", "upper curve of the first building", true);
    add_opt(concat, "u2", "lower curve of the first building", true);
    add_opt(concat, "v1", "upper curve of the second building", true);
    add_opt(concat, "v2", "lower curve of the second building", true);

    auto* ob = app.add_subcommand("openbook", "open-book alternative for a curve");
    add_opt(ob, "curve", "curve name", true);
    add_opt(ob, "openbook", "open book name", true);

    auto* oracle = app.add_subcommand("oracle", "spectral oracle verification");
    add_opt(oracle, "scenario",
            "workspace scenario name, or elliptic | even-hyperbolic | odd-hyperbolic", true);
    add_opt(oracle, "theta", "rotation p/q for the elliptic model");
    add_opt(oracle, "a", "hyperbolic strength");
    add_opt(oracle, "alpha0", "reference winding twist");
    add_opt(oracle, "modes", "Fourier truncation");
    add_opt(oracle, "window", "eigenvalue window");
    add_opt(oracle, "tolerance", "cover-law tolerance");
    add_opt(oracle, "cover", "verify one cover multiplicity");

    auto* selftest = app.add_subcommand("selftest", "run the acceptance battery");
    add_flag(selftest, "fast", "reduced instance counts");

    CLI11_PARSE(app, argc, argv);
    cmd.name = app.get_subcommands().front()->get_name();

    try {
        czint::Workspace ws;
        if (!workspace_path.empty())
            ws = czint::parse_workspace(resolve_workspace(workspace_path));
        Report rep = czint::run(cmd, ws);
        emit(rep, format);
        return rep.exit_code();
    } catch (const czint::Error& e) {
        czint::json err{{"error", czint::errc_name(e.code())}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return e.is_input_error() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << czint::json{{"error", "Unhandled"}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    }
}
