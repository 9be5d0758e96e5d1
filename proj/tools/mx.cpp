#include <filesystem>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "modelspace/fixtures.hpp"
#include "modelspace/json_io.hpp"

namespace fs = std::filesystem;
using namespace modelspace;

namespace {

int g_log_level = 1; // 0 quiet, 1 info, 2 debug

template <typename... Args>
void info(fmt::format_string<Args...> f, Args&&... args) {
    if (g_log_level >= 1) fmt::print(stderr, f, std::forward<Args>(args)...);
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
    return out;
}

std::string stem_path(const std::string& out) {
    fs::path p(out);
    fs::path dir = p.parent_path();
    return (dir / p.stem()).string();
}

Artifact load_artifact(PortType type, const std::string& path) {
    Artifact a;
    a.type = type;
    json j = load_json_file(path);
    switch (type) {
        case PortType::DiagramOverX:
            a.space = std::make_shared<ModelSpace>(model_space_from_json(j));
            break;
        case PortType::Span:
            a.span = std::make_shared<TypedSpan>(span_from_json(j));
            break;
        case PortType::Morphism:
            a.morphism = std::make_shared<MorphismArtifact>(morphism_artifact_from_json(j));
            break;
        case PortType::CSetArtifact:
        case PortType::Base:
            a.net = std::make_shared<PetriNet>(petri_from_json(j));
            break;
    }
    return a;
}

int cmd_explore(const std::string& workflow_path, const std::string& inputs_dir,
                const std::string& out_path) {
    Workflow w = workflow_from_json(load_json_file(workflow_path));
    auto errors = typecheck(w);
    if (!errors.empty()) {
        for (const auto& e : errors) fmt::print(stderr, "typecheck: {}\n", e);
        return 1;
    }
    std::map<std::string, Artifact> inputs;
    for (const auto& [name, decl] : w.inputs) {
        fs::path file = fs::path(inputs_dir) / decl.file;
        if (!fs::exists(file)) {
            fmt::print(stderr, "missing input '{}': no such file {}\n", name, file.string());
            return 1;
        }
        inputs[name] = load_artifact(decl.type, file.string());
    }
    WorkflowResult res = execute(w, inputs);
    for (const auto& line : res.log) info("{}\n", line);

    const ModelSpace* space = nullptr;
    for (const auto& out : w.outputs) {
        const Artifact& a = res.outputs.at(out);
        if (a.type == PortType::DiagramOverX) {
            space = a.space.get();
            break;
        }
    }
    if (!space) {
        fmt::print(stderr, "workflow has no DiagramOverX output\n");
        return 1;
    }
    write_file(out_path, to_json(*space).dump(2) + "\n");
    std::string dot_path = stem_path(out_path) + ".dot";
    write_file(dot_path, shape_to_dot(*space->space.diagram.shape));
    info("wrote {} ({} nodes) and {}\n", out_path, space->space.diagram.ob.size(), dot_path);
    return 0;
}

int cmd_generate(const std::string& space_path, const std::string& node_name,
                 const std::string& params_path, double t0, double t1, int samples,
                 double noise, std::uint64_t seed, double dt, const std::string& out_path) {
    ModelSpace ms = model_space_from_json(load_json_file(space_path));
    int node = ms.node_index(node_name);
    if (node < 0) {
        fmt::print(stderr, "node '{}' not found in the space; have:", node_name);
        for (const auto& n : ms.space.diagram.shape->objects) fmt::print(stderr, " {}", n);
        fmt::print(stderr, "\n");
        return 1;
    }
    if (samples < 1 || !(t1 > t0)) {
        fmt::print(stderr, "need samples >= 1 and t1 > t0\n");
        return 1;
    }
    PetriNet net = ms.node_net(node);
    ParamSet p = params_from_json(load_json_file(params_path), net);
    Trajectory tr = simulate(net, p, t0, t1, dt);

    const ObservableMap& obs = ms.meta[node].obs;
    TimeSeries ts;
    ts.columns = obs.cod_species;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 1; k <= samples; ++k) {
        double t = t0 + static_cast<double>(k) * (t1 - t0) / static_cast<double>(samples);
        std::vector<double> x = tr.sample(t);
        std::vector<double> row;
        for (const auto& c : ts.columns) {
            double v = 0;
            for (size_t s = 0; s < obs.morphism.components[PETRI_S].size(); ++s)
                if (obs.cod_species[obs.morphism.components[PETRI_S][s]] == c) v += x[s];
            if (noise > 0) v += noise * gauss(rng);
            row.push_back(v);
        }
        ts.times.push_back(t);
        ts.values.push_back(std::move(row));
    }
    write_file(out_path, timeseries_to_csv(ts));
    info("wrote {} ({} samples, columns t,{})\n", out_path, samples,
         fmt::join(ts.columns, ","));
    return 0;
}

int cmd_select(const std::string& space_path, const std::string& data_path,
               const std::string& config_path, std::uint64_t seed, bool seed_given,
               const std::string& out_path) {
    ModelSpace ms = model_space_from_json(load_json_file(space_path));
    TimeSeries data = timeseries_from_csv(read_file(data_path));
    FitConfig cfg;
    if (!config_path.empty()) cfg = fit_config_from_json(load_json_file(config_path));
    if (seed_given) cfg.seed = seed;

    FitReport report = select_models(ms, data, cfg);
    write_file(out_path, to_json(report, ms).dump(2) + "\n");
    std::string stem = stem_path(out_path);
    write_file(stem + ".loss.csv", loss_table_csv(report));
    for (const auto& nf : report.nodes) {
        int node = ms.node_index(nf.node);
        PetriNet net = ms.node_net(node);
        Trajectory tr = simulate(net, nf.best, cfg.t0, data.times.back(), cfg.dt);
        const ObservableMap& obs = ms.meta[node].obs;
        write_file(fmt::format("{}.traj.{}.csv", stem, sanitize(nf.node)),
                   trajectory_csv(tr, data.times, obs, obs.cod_species));
    }
    info("wrote {} and per-node trajectories; reference '{}'\n", out_path, report.reference);
    for (const auto& nf : report.nodes)
        info("  {:<14} raw {:.6g} normalized {:.4g}\n", nf.node, nf.raw_loss, nf.normalized);
    return 0;
}

int cmd_fixtures(const std::string& out_dir) {
    fs::create_directories(out_dir);
    fs::path dir(out_dir);
    auto inputs = fixtures::workflow_inputs();
    write_file((dir / "disease_path.json").string(),
               to_json(*inputs["disease_path"].space).dump(2) + "\n");
    write_file((dir / "geography_path.json").string(),
               to_json(*inputs["geography_path"].space).dump(2) + "\n");
    write_file((dir / "death_span.json").string(),
               to_json(*inputs["death_span"].span).dump(2) + "\n");
    write_file((dir / "workflow.json").string(),
               to_json(fixtures::exploration_workflow()).dump(2) + "\n");

    // Ground-truth parameters for the two-city SIRD node, for `mx generate`.
    WorkflowResult res = execute(fixtures::exploration_workflow(), inputs);
    const ModelSpace& space = *res.outputs.at("stratify.out").space;
    int node = space.node_index("(SIRD,2)");
    PetriNet net = space.node_net(node);
    write_file((dir / "truth_params.json").string(),
               params_to_json(fixtures::sird2_truth(net), net).dump(2) + "\n");

    json fit;
    fit["optimizer"] = "nelder-mead";
    fit["max_evals"] = 2000;
    fit["restarts"] = 3;
    fit["seed"] = 20220909;
    fit["dt"] = 0.01;
    fit["reference"] = "(SIRD,2)";
    fit["root_rate_init"] = 0.5;
    fit["prior"] = {{"total", 1.0},
                    {"marginals", json::array({{{"S", 0.9}, {"I", 0.1}},
                                               {{"X", 0.5}, {"Y", 0.5}}})}};
    write_file((dir / "fit.json").string(), fit.dump(2) + "\n");
    info("wrote workflow fixtures to {}\n", out_dir);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computer algebra for compositional model spaces"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string log_level = "info";
    app.add_option("--seed", seed, "global RNG seed")->each([&](const std::string&) {
        seed_given = true;
    });
    app.add_option("--log-level", log_level, "quiet|info|debug")
        ->check(CLI::IsMember({"quiet", "info", "debug"}));

    std::string workflow_path, inputs_dir, out_path, space_path, node_name, params_path;
    std::string data_path, config_path, fixtures_dir;
    double t0 = 0.0, t1 = 50.0, noise = 0.01, dt = 0.01;
    int samples = 50;

    auto* explore = app.add_subcommand("explore", "run a workflow file over input artifacts");
    explore->add_option("--workflow", workflow_path)->required();
    explore->add_option("--inputs", inputs_dir)->required();
    explore->add_option("--out", out_path)->required();

    auto* generate = app.add_subcommand("generate", "simulate a node and write observed CSV");
    generate->add_option("--space", space_path)->required();
    generate->add_option("--node", node_name)->required();
    generate->add_option("--params", params_path)->required();
    generate->add_option("--t0", t0);
    generate->add_option("--t1", t1);
    generate->add_option("--samples", samples);
    generate->add_option("--noise", noise);
    generate->add_option("--dt", dt);
    generate->add_option("--out", out_path)->required();

    auto* select = app.add_subcommand("select", "fit every model in a space against data");
    select->add_option("--space", space_path)->required();
    select->add_option("--data", data_path)->required();
    select->add_option("--config", config_path);
    select->add_option("--out", out_path)->required();

    auto* fixtures_cmd = app.add_subcommand("fixtures", "write the bundled example artifacts");
    fixtures_cmd->add_option("--out", fixtures_dir)->required();

    for (auto* sub : {explore, generate, select, fixtures_cmd}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    g_log_level = log_level == "quiet" ? 0 : (log_level == "debug" ? 2 : 1);

    try {
        if (app.got_subcommand(explore))
            return cmd_explore(workflow_path, inputs_dir, out_path);
        if (app.got_subcommand(generate))
            return cmd_generate(space_path, node_name, params_path, t0, t1, samples, noise,
                                seed, dt, out_path);
        if (app.got_subcommand(select))
            return cmd_select(space_path, data_path, config_path, seed, seed_given, out_path);
        if (app.got_subcommand(fixtures_cmd)) return cmd_fixtures(fixtures_dir);
    } catch (const InternalError& e) {
        fmt::print(stderr, "internal error: {}\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 1;
}
