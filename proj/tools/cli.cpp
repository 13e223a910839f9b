#include "cli.hpp"

#include "discjam/construction.hpp"
#include "discjam/errors.hpp"
#include "discjam/io.hpp"
#include "discjam/metropolis.hpp"
#include "discjam/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>

namespace discjam::cli {

namespace {

struct Options {
    int N = 8;
    std::string layout = "wall-bridges";
    double lambda = 0.1;
    double eps_hi = 8.0;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::uint64_t simulate_steps = 1000000;
    std::uint64_t escape_steps = 100000;
    double step_radius = 0.0;
    std::vector<double> shrink;
    int window = 40;
    std::string out;
    std::string format = "text";
    std::string input;
    std::uint64_t record_interval = 100000;
    bool wall = false;
    bool contacts = false;
    bool jamming = false;
};

std::string param_text(const ParamValue& v)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>)
                return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>)
                return x;
            else if constexpr (std::is_same_v<T, double>)
                return format_shortest(x);
            else
                return std::to_string(x);
        },
        v);
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    Tolerances tolerances() const
    {
        Tolerances t;
        t.tangency_rel = o_.tol;
        t.validate();
        return t;
    }

    bool json() const { return o_.format == "json"; }

    void print_params(const ParamList& params) const
    {
        if (json())
            return;
        out_ << "parameters:\n";
        for (const auto& [k, v] : params)
            out_ << "  " << k << " = " << param_text(v) << "\n";
    }

    // Text lines are printed as "key: value"; JSON goes out as one object.
    void emit(const ParamList& params, const nlohmann::ordered_json& body) const
    {
        if (json()) {
            nlohmann::ordered_json j;
            nlohmann::ordered_json p = nlohmann::ordered_json::object();
            for (const auto& [k, v] : params)
                std::visit([&](const auto& x) { p[k] = x; }, v);
            j["parameters"] = p;
            for (const auto& [k, v] : body.items())
                j[k] = v;
            out_ << j.dump(2) << "\n";
            return;
        }
        print_params(params);
        for (const auto& [k, v] : body.items())
            out_ << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }

    void save_config(const Configuration& cfg) const
    {
        if (o_.out.empty())
            return;
        const std::string path = resolve_output_path(o_.out);
        if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
            write_csv(cfg, path);
        else
            write_config(cfg, path);
        if (!json())
            out_ << "wrote " << path << "\n";
    }

    ParamList base_params(const char* command) const
    {
        ParamList p{{"command", std::string(command)}, {"format", o_.format}};
        if (!o_.out.empty())
            p.emplace_back("out", resolve_output_path(o_.out));
        return p;
    }

    int build_bridge() const
    {
        const Tolerances tol = tolerances();
        ParamList p = base_params("build-bridge");
        p.insert(p.end(), {{"N", std::int64_t{o_.N}},
                           {"lambda", o_.lambda},
                           {"eps_hi", o_.eps_hi},
                           {"tol", o_.tol},
                           {"wall", o_.wall}});
        const CurveFamily fam = CurveFamily::exponential(o_.lambda);
        const TuneResult tuned = tune_epsilon(fam, o_.N, o_.eps_hi, tol);
        Configuration cfg = o_.wall ? build_wall_bridge(fam, o_.N, -1.0, o_.eps_hi, tol)
                                    : complete_symmetric_bridge(tuned.chain, tol);
        const JammingReport rep = verify_stable(cfg, tol);
        nlohmann::ordered_json body;
        body["report"] = "bridge";
        body["epsilon"] = tuned.epsilon;
        body["closure_residual"] = tuned.residual;
        body["max_tangency_residual"] = max_tangency_residual(tuned.chain);
        body["mirror_x"] = tuned.chain.mirror_x;
        body["n"] = cfg.size();
        body["movable_count"] = rep.movable_count;
        body["movable"] = rep.movable_indices();
        emit(p, body);
        save_config(cfg);
        return exit_ok;
    }

    int build_square() const
    {
        ParamList p = base_params("build-square");
        p.insert(p.end(), {{"N", std::int64_t{o_.N}},
                           {"layout", o_.layout},
                           {"lambda", o_.lambda},
                           {"eps_hi", o_.eps_hi},
                           {"tol", o_.tol}});
        AssemblyOptions opts;
        opts.lambda = o_.lambda;
        opts.eps_hi = o_.eps_hi;
        opts.tol = tolerances();
        print_params(p);
        const auto [cfg, metrics] = assemble_square(o_.N, parse_layout(o_.layout), opts);
        if (json()) {
            out_ << report_json(metrics, p);
        } else {
            out_ << "layout: " << metrics.layout << "\nn: " << metrics.n << "\nr: " << format_shortest(metrics.r)
                 << "\nn_times_r: " << format_shortest(metrics.n_times_r)
                 << "\nepsilon: " << format_shortest(metrics.epsilon_used) << "\nmovable_count: 0\n";
        }
        save_config(cfg);
        return exit_ok;
    }

    int fixed_piece(const char* command, const Configuration& cfg) const
    {
        const ParamList p = base_params(command);
        const JammingReport rep = verify_stable(cfg, tolerances());
        nlohmann::ordered_json body;
        body["report"] = command;
        body["n"] = cfg.size();
        body["radius"] = cfg.radius;
        body["contact_edges"] = rep.contact_edges;
        body["wall_contacts"] = rep.wall_contacts;
        body["movable_count"] = rep.movable_count;
        body["movable"] = rep.movable_indices();
        emit(p, body);
        save_config(cfg);
        return exit_ok;
    }

    int tiling() const
    {
        ParamList p = base_params("tiling");
        p.emplace_back("window", std::int64_t{o_.window});
        const Configuration cfg = tiling_3_12_12(o_.window);
        const double h = 2.0 * o_.window;
        nlohmann::ordered_json body;
        body["report"] = "tiling";
        body["n"] = cfg.size();
        body["density"] = density(cfg, Rect{-h, -h, h, h});
        body["density_limit"] = tiling_density_limit();
        emit(p, body);
        save_config(cfg);
        return exit_ok;
    }

    Configuration load() const { return read_config(o_.input); }

    int verify() const
    {
        ParamList p = base_params("verify");
        p.insert(p.end(), {{"input", o_.input}, {"tol", o_.tol}});
        const Configuration cfg = load();
        const JammingReport rep = verify_stable(cfg, tolerances());
        if (json()) {
            out_ << report_json(rep, p);
        } else {
            print_params(p);
            out_ << "n: " << cfg.size() << "\ncontact_edges: " << rep.contact_edges
                 << "\nwall_contacts: " << rep.wall_contacts << "\nmovable_count: " << rep.movable_count
                 << "\nrattler_count: " << rep.rattler_count << "\nstable: " << (rep.stable() ? "true" : "false")
                 << "\n"
                 << describe_movable(rep);
        }
        if (!o_.out.empty())
            write_report(rep, resolve_output_path(o_.out), p);
        return rep.stable() ? exit_ok : exit_movable;
    }

    ChainParams chain_params(const Configuration& cfg, std::uint64_t steps) const
    {
        ChainParams cp = default_chain_params(cfg);
        cp.steps = steps;
        cp.seed = o_.seed;
        cp.record_interval = std::min(o_.record_interval, steps);
        if (o_.step_radius > 0.0)
            cp.step_radius = o_.step_radius;
        cp.validate();
        return cp;
    }

    int simulate() const
    {
        const Configuration loaded = load();
        if (o_.shrink.size() > 1)
            throw InvalidArgument("simulate takes a single --shrink factor");
        const double factor = o_.shrink.empty() ? 1.0 : o_.shrink.front();
        const Configuration cfg = shrink_radius(loaded, factor);
        const ChainParams cp = chain_params(loaded, o_.simulate_steps);
        ParamList p = base_params("simulate");
        p.insert(p.end(), {{"input", o_.input},
                           {"steps", cp.steps},
                           {"seed", cp.seed},
                           {"step_radius", cp.step_radius},
                           {"shrink", factor},
                           {"record_interval", cp.record_interval},
                           {"rng", std::string(ChainRng::algorithm)}});
        const ChainResult res = run_chain(cfg, cp);
        if (json()) {
            out_ << report_json(res.stats, p);
        } else {
            print_params(p);
            out_ << "proposed: " << res.stats.proposed << "\naccepted: " << res.stats.accepted
                 << "\nacceptance_rate: " << format_shortest(res.stats.acceptance_rate)
                 << "\nmax_center_displacement: " << format_shortest(res.stats.max_center_displacement)
                 << "\nfrozen_step_bound: " << format_shortest(frozen_step_bound(cfg, tolerances())) << "\n";
        }
        if (!o_.out.empty())
            write_report(res.stats, resolve_output_path(o_.out), p);
        return exit_ok;
    }

    int escape() const
    {
        const Configuration cfg = load();
        const std::vector<double> factors =
            o_.shrink.empty() ? std::vector<double>{1.0, 0.999, 0.99, 0.95} : o_.shrink;
        const ChainParams cp = chain_params(cfg, o_.escape_steps);
        ParamList p = base_params("escape");
        std::string list;
        for (double f : factors)
            list += (list.empty() ? "" : ",") + format_shortest(f);
        p.insert(p.end(), {{"input", o_.input},
                           {"factors", list},
                           {"steps", cp.steps},
                           {"seed", cp.seed},
                           {"step_radius", cp.step_radius},
                           {"rng", std::string(ChainRng::algorithm)}});
        const auto rows = escape_experiment(cfg, factors, cp);
        if (json()) {
            out_ << report_json(rows, p);
        } else {
            print_params(p);
            out_ << "factor accepted proposed acceptance_rate\n";
            for (const EscapeRow& r : rows)
                out_ << format_shortest(r.factor) << " " << r.stats.accepted << " " << r.stats.proposed << " "
                     << format_shortest(r.stats.acceptance_rate) << "\n";
        }
        if (!o_.out.empty())
            write_report(rows, resolve_output_path(o_.out), p);
        return exit_ok;
    }

    int density_cmd() const
    {
        const Configuration cfg = load();
        Rect region;
        std::string region_name;
        if (cfg.box.is_bounded()) {
            region = {cfg.box.xmin, cfg.box.ymin, cfg.box.xmax, cfg.box.ymax};
            region_name = "box";
        } else {
            const double h = 2.0 * o_.window * cfg.radius;
            region = {-h, -h, h, h};
            region_name = "window";
        }
        ParamList p = base_params("density");
        p.insert(p.end(), {{"input", o_.input}, {"window", std::int64_t{o_.window}}, {"region", region_name}});
        nlohmann::ordered_json body;
        body["report"] = "density";
        body["region"] = {region.xmin, region.ymin, region.xmax, region.ymax};
        body["n"] = cfg.size();
        body["density"] = density(cfg, region);
        emit(p, body);
        return exit_ok;
    }

    int render() const
    {
        const Configuration cfg = load();
        RenderOptions ro;
        ro.contacts = o_.contacts;
        ro.jamming = o_.jamming;
        ro.tol = tolerances();
        const std::string svg = render_svg(cfg, ro);
        if (o_.out.empty()) {
            out_ << svg;
            return exit_ok;
        }
        ParamList p = base_params("render");
        p.insert(p.end(), {{"input", o_.input}, {"contacts", o_.contacts}, {"jamming", o_.jamming}});
        write_text_file(resolve_output_path(o_.out), svg);
        nlohmann::ordered_json body;
        body["report"] = "render";
        body["circles"] = cfg.size();
        emit(p, body);
        return exit_ok;
    }

private:
    const Options& o_;
    std::ostream& out_;
};

void add_format(CLI::App* sub, Options& o)
{
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

void add_out(CLI::App* sub, Options& o, const char* what)
{
    sub->add_option("--out", o.out, what);
}

void add_tol(CLI::App* sub, Options& o)
{
    sub->add_option("--tol", o.tol, "Relative tangency tolerance")->check(CLI::Range(1e-11, 0.5))->capture_default_str();
}

void add_curve(CLI::App* sub, Options& o)
{
    sub->add_option("--N", o.N, "Bridge length parameter")->check(CLI::Range(3, 4096))->capture_default_str();
    sub->add_option("--lambda", o.lambda, "Shape of the default base curve")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--eps-hi", o.eps_hi, "Upper end of the epsilon scan")->check(CLI::PositiveNumber)->capture_default_str();
    add_tol(sub, o);
}

void add_input(CLI::App* sub, Options& o)
{
    sub->add_option("file", o.input, "Configuration JSON file")->required();
}

void add_chain(CLI::App* sub, Options& o, std::uint64_t& steps)
{
    sub->add_option("--steps", steps, "Metropolis proposals")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))->capture_default_str();
    sub->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    sub->add_option("--step-radius", o.step_radius, "Proposal radius (default: disc radius)")->check(CLI::PositiveNumber);
    sub->add_option("--record-interval", o.record_interval, "Steps per trace window")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))->capture_default_str();
    sub->add_option("--shrink", o.shrink, "Radius shrink factor(s) in (0, 1]")
        ->delimiter(',')
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                double v = 0.0;
                try {
                    v = std::stod(s);
                } catch (...) {
                    return "not a number: " + s;
                }
                return v > 0.0 && v <= 1.0 ? std::string() : "shrink factor must lie in (0, 1]";
            },
            "FACTOR in (0,1]"));
}

} // namespace

std::string resolve_output_path(const std::string& path)
{
    const char* dir = std::getenv("DISCJAM_OUTPUT_DIR");
    if (!dir || !*dir || path.empty() || std::filesystem::path(path).is_absolute())
        return path;
    return (std::filesystem::path(dir) / path).string();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Stable sparse disc configurations: construction, verification and Metropolis experiments", "discjam"};
    app.require_subcommand(1, 1);

    auto* bridge = app.add_subcommand("build-bridge", "Tune and build a finite bridge");
    add_curve(bridge, o);
    bridge->add_flag("--wall", o.wall, "Build the wall-resting half-bridge instead");
    add_out(bridge, o, "Write the configuration (.json or .csv)");
    add_format(bridge, o);

    auto* square = app.add_subcommand("build-square", "Assemble a stable configuration in the unit square");
    add_curve(square, o);
    square->add_option("--layout", o.layout, "Bridge layout")
        ->check(CLI::IsMember({"wall-bridges", "interior-bridges"}))
        ->capture_default_str();
    add_out(square, o, "Write the configuration (.json or .csv)");
    add_format(square, o);

    auto* junction = app.add_subcommand("junction", "Emit the six-disc corner junction");
    add_tol(junction, o);
    add_out(junction, o, "Write the configuration (.json or .csv)");
    add_format(junction, o);

    auto* five = app.add_subcommand("five-disc", "Emit the stable five-disc configuration");
    add_tol(five, o);
    add_out(five, o, "Write the configuration (.json or .csv)");
    add_format(five, o);

    auto* tiling = app.add_subcommand("tiling", "Emit discs on the 3.12.12 tiling");
    tiling->add_option("--window", o.window, "Window half-width in edge lengths")->check(CLI::Range(2, 100000))->capture_default_str();
    add_out(tiling, o, "Write the configuration (.json or .csv)");
    add_format(tiling, o);

    auto* verify = app.add_subcommand("verify", "Certify that every disc is locally jammed");
    add_input(verify, o);
    add_tol(verify, o);
    add_out(verify, o, "Write the JSON jamming report");
    add_format(verify, o);

    auto* simulate = app.add_subcommand("simulate", "Run the hard-disc Metropolis chain");
    add_input(simulate, o);
    add_chain(simulate, o, o.simulate_steps);
    add_tol(simulate, o);
    add_out(simulate, o, "Write the JSON chain report");
    add_format(simulate, o);

    auto* escape = app.add_subcommand("escape", "Acceptance after shrinking the radius");
    add_input(escape, o);
    add_chain(escape, o, o.escape_steps);
    add_out(escape, o, "Write the JSON escape table");
    add_format(escape, o);

    auto* dens = app.add_subcommand("density", "Covered area fraction");
    add_input(dens, o);
    dens->add_option("--window", o.window, "Half-width in edge lengths for unbounded configurations")->check(CLI::Range(2, 100000))->capture_default_str();
    add_format(dens, o);

    auto* render = app.add_subcommand("render", "Render a configuration as SVG");
    add_input(render, o);
    add_tol(render, o);
    render->add_flag("--contacts", o.contacts, "Draw contact edges");
    render->add_flag("--jamming", o.jamming, "Color discs by jamming verdict");
    add_out(render, o, "SVG output path (default: stdout)");
    add_format(render, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        const auto subs = app.get_subcommands();
        err << "error: " << e.what() << "\n" << (subs.empty() ? app.help() : subs.front()->help());
        return exit_error;
    }

    const Runner run(o, out);
    const std::map<const CLI::App*, std::function<int()>> table{
        {bridge, [&] { return run.build_bridge(); }},
        {square, [&] { return run.build_square(); }},
        {junction, [&] { return run.fixed_piece("junction", junction_piece()); }},
        {five, [&] { return run.fixed_piece("five-disc", five_disc_config()); }},
        {tiling, [&] { return run.tiling(); }},
        {verify, [&] { return run.verify(); }},
        {simulate, [&] { return run.simulate(); }},
        {escape, [&] { return run.escape(); }},
        {dens, [&] { return run.density_cmd(); }},
        {render, [&] { return run.render(); }},
    };
    CLI::App* chosen = app.get_subcommands().front();
    try {
        return table.at(chosen)();
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n" << chosen->help();
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
}

} // namespace discjam::cli
