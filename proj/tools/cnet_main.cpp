// cnet: synthetic contact-network generation, graph-complexity features, and
// the clustering comparison against stylized and real-world graphs.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cnet/analysis.hpp"
#include "cnet/contact.hpp"
#include "cnet/error.hpp"
#include "cnet/features.hpp"
#include "cnet/graph_io.hpp"
#include "cnet/pipeline.hpp"
#include "cnet/rng.hpp"
#include "cnet/stylized.hpp"
#include "cnet/synthpop.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace cnet;

namespace {

std::vector<std::string> collect_argv(int argc, char** argv) {
    return {argv, argv + argc};
}

void cmd_gen_stylized(const std::vector<std::string>& argv, const std::string& family,
                      bool table3, NodeId n, double p, NodeId k, NodeId d, NodeId m,
                      std::uint64_t seed, const std::string& out_path,
                      const std::string& out_dir) {
    if (table3) {
        if (out_dir.empty()) throw input_error("--table3 requires --out-dir");
        fs::create_directories(out_dir);
        for (auto& lg : table3_suite(seed)) {
            std::string path = (fs::path(out_dir) / (lg.label.name + ".tsv")).string();
            save_graph(path, lg.graph, lg.label);
            write_manifest(path, "gen-stylized", argv, seed, {}, {path});
        }
        return;
    }
    if (out_path.empty()) throw input_error("--out is required");
    StylizedSpec spec;
    spec.family = family_from_name(family);
    spec.n = n;
    spec.p = p;
    spec.k = k;
    spec.d = d;
    spec.m = m;
    spec.seed = seed;
    Graph g = gen_stylized(spec);
    save_graph(out_path, g, {fs::path(out_path).stem().string(), spec.family});
    write_manifest(out_path, "gen-stylized", argv, seed, {}, {out_path});
}

void cmd_gen_population(const std::vector<std::string>& argv, const std::string& config,
                        int households, std::uint64_t seed, const std::string& out_path) {
    PopulationConfig pc = load_population_config(config);
    std::vector<double> fitted = ipf_fit(pc.marginals, 1e-9, 500);
    Population pop = sample_households(pc, fitted, households, seed);
    auto schedules = assign_schedules(pop, pc);
    assign_home_locations(pop);
    VisitSchedule vs = gravity_assign(pop, schedules, seed);
    validate_visit_schedule(vs, pop);
    save_visits(out_path, vs);
    write_manifest(out_path, "gen-population", argv, seed, {config}, {out_path});
}

void cmd_induce_contacts(const std::vector<std::string>& argv, const std::string& visits,
                         const std::string& out_path) {
    ContactMultigraph cm = induce_contacts(load_visits(visits));
    save_contacts(out_path, cm);
    write_manifest(out_path, "induce-contacts", argv, 0, {visits}, {out_path});
}

void cmd_sample_contacts(const std::vector<std::string>& argv, const std::string& contacts,
                         const std::string& probs_csv, bool table2, std::uint64_t seed,
                         const std::string& out_path, const std::string& out_dir) {
    ContactMultigraph cm = load_contacts(contacts);
    if (table2) {
        if (out_dir.empty()) throw input_error("--table2 requires --out-dir");
        fs::create_directories(out_dir);
        json summary = json::array();
        for (auto& lg : table2_suite(cm, seed)) {
            std::string path = (fs::path(out_dir) / (lg.label.name + ".tsv")).string();
            save_graph(path, lg.graph, lg.label);
            write_manifest(path, "sample-contacts", argv, seed, {contacts}, {path});
            const ActivityProbabilities* probs = nullptr;
            for (const auto& cfg : table2_configs())
                if (cfg.name == lg.label.name) probs = &cfg.probs;
            summary.push_back({{"name", lg.label.name},
                               {"probabilities", probs->p},
                               {"node_count", lg.graph.node_count()},
                               {"edge_count", lg.graph.edge_count()},
                               {"avg_degree", lg.graph.average_degree()}});
        }
        std::ofstream out(fs::path(out_dir) / "table2_summary.json");
        out << summary.dump(2) << '\n';
        return;
    }
    if (out_path.empty()) throw input_error("--out is required");
    ActivityProbabilities probs = parse_probabilities(probs_csv);
    Graph g = sample_contacts(cm, probs, seed);
    save_graph(out_path, g, {fs::path(out_path).stem().string(), GraphFamily::AgentSynthetic});
    write_manifest(out_path, "sample-contacts", argv, seed, {contacts}, {out_path});
}

void cmd_features(const std::vector<std::string>& argv, const std::string& graph_path,
                  const std::string& format, const std::string& layout_str,
                  NodeId approx_threshold, std::uint64_t seed, const std::string& out_path) {
    FeatureLayout layout = layout_from_name(layout_str);
    GraphLabel label;
    Graph g;
    if (format == "saved") {
        SavedGraph sg = load_saved_graph(graph_path);
        g = std::move(sg.graph);
        label = sg.label;
    } else {
        LoadedGraph lg = load_graph(graph_path, format_from_name(format));
        g = std::move(lg.graph);
        label = {fs::path(graph_path).stem().string(), GraphFamily::RealWorld};
    }
    FeatureResult res = extract_features(g, layout, approx_threshold, seed);

    FeatureMatrix fm;
    fm.layout = layout;
    fm.slot_names = res.vector.slot_names;
    fm.rows.push_back(res.vector.values);
    fm.labels.push_back(label);
    save_feature_matrix_csv(out_path, fm);

    json prov = {{"layout", layout_name(layout)},
                 {"approx_threshold", approx_threshold},
                 {"betweenness_exact", res.provenance.betweenness_exact},
                 {"wiener_exact", res.provenance.wiener_exact},
                 {"seed", res.provenance.seed},
                 {"sample_count", res.provenance.sample_count},
                 {"vdi_defaulted", res.provenance.vdi_defaulted},
                 {"pagerank", {{"damping", 0.85}, {"tol", 1e-10}}}};
    std::ofstream ms(out_path + ".provenance.json");
    ms << prov.dump(2) << '\n';
    write_manifest(out_path, "features", argv, seed, {graph_path}, {out_path});
}

void cmd_analyze(const std::vector<std::string>& argv, const std::string& features_csv,
                 int k, std::uint64_t seed, bool no_standardize, const std::string& out_dir) {
    fs::create_directories(out_dir);
    FeatureMatrix fm = load_feature_matrix_csv(features_csv);
    FeatureMatrix work = no_standardize ? fm : standardize(fm);
    KMeansResult km = kmeans(work, k, seed, 32);
    Pca2Result pca = pca2(work);
    AgreementResult agree = label_agreement(km.assignments, fm.labels);

    json ja;
    ja["tool_version"] = kToolVersion;
    ja["k"] = k;
    ja["standardized"] = !no_standardize;
    ja["wcss"] = km.wcss;
    for (size_t i = 0; i < fm.labels.size(); ++i)
        ja["assignments"].push_back({{"name", fm.labels[i].name},
                                     {"family", family_name(fm.labels[i].family)},
                                     {"cluster", km.assignments[i]}});
    ja["centroids"] = km.centroids;
    ja["axes"] = pca.axes;
    ja["explained_variance"] = pca.explained_variance;
    ja["ari"] = agree.ari;
    for (auto& [fam, purity] : agree.family_purity)
        ja["family_purity"][family_name(fam)] = purity;
    std::string analysis_path = (fs::path(out_dir) / "analysis.json").string();
    std::ofstream as(analysis_path);
    as << ja.dump(2) << '\n';
    as.close();

    std::string scatter_path = (fs::path(out_dir) / "scatter.csv").string();
    std::ofstream sc(scatter_path);
    sc << "name,family,cluster,pc1,pc2\n";
    char buf[64];
    for (size_t i = 0; i < fm.labels.size(); ++i) {
        sc << fm.labels[i].name << ',' << family_name(fm.labels[i].family) << ','
           << km.assignments[i];
        for (int a = 0; a < 2; ++a) {
            std::snprintf(buf, sizeof(buf), "%.17g", pca.projection[i][static_cast<size_t>(a)]);
            sc << ',' << buf;
        }
        sc << '\n';
    }
    sc.close();
    write_manifest(analysis_path, "analyze", argv, seed, {features_csv},
                   {analysis_path, scatter_path});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic contact-network graph toolkit"};
    app.require_subcommand(1);
    std::vector<std::string> full_argv = collect_argv(argc, argv);

    std::uint64_t seed = 0;
    int threads = 1;
    app.add_option("--seed", seed, "global random seed");
    app.add_option("--threads", threads, "worker threads for per-graph fan-out");

    // gen-stylized
    auto* gs = app.add_subcommand("gen-stylized", "generate a stylized random graph");
    std::string gs_family = "ErdosRenyi", gs_out, gs_out_dir;
    bool gs_table3 = false;
    NodeId gs_n = 0, gs_k = 0, gs_d = 0, gs_m = 0;
    double gs_p = 0.0;
    gs->add_option("--family", gs_family, "ErdosRenyi|NewmanWatts|RandomRegular|PowerlawCluster");
    gs->add_option("--n", gs_n, "node count");
    gs->add_option("--p", gs_p, "probability parameter");
    gs->add_option("--k", gs_k, "ring neighbors (Newman-Watts)");
    gs->add_option("--d", gs_d, "degree (random-regular)");
    gs->add_option("--m", gs_m, "edges per node (powerlaw-cluster)");
    gs->add_flag("--table3", gs_table3, "emit the full twelve-graph suite");
    gs->add_option("--out", gs_out, "output graph path (tsv)");
    gs->add_option("--out-dir", gs_out_dir, "output directory for --table3");

    // gen-population
    auto* gp = app.add_subcommand("gen-population", "generate a synthetic visit schedule");
    std::string gp_config, gp_out = "visits.tsv";
    int gp_households = 1000;
    gp->add_option("--config", gp_config, "population config JSON")->required();
    gp->add_option("--households", gp_households, "number of households to sample");
    gp->add_option("--out", gp_out, "output visits tsv");

    // induce-contacts
    auto* ic = app.add_subcommand("induce-contacts", "induce person-person collocations");
    std::string ic_visits, ic_out = "contacts.tsv";
    ic->add_option("--visits", ic_visits, "visits tsv")->required();
    ic->add_option("--out", ic_out, "output contacts tsv");

    // sample-contacts
    auto* scs = app.add_subcommand("sample-contacts", "thin contacts by activity probabilities");
    std::string sc_contacts, sc_probs, sc_out, sc_out_dir;
    bool sc_table2 = false;
    scs->add_option("--contacts", sc_contacts, "contacts tsv")->required();
    scs->add_option("--probs", sc_probs, "home,work,shopping,other,school probabilities");
    scs->add_flag("--table2", sc_table2, "emit all ten configurations plus a summary");
    scs->add_option("--out", sc_out, "output graph path");
    scs->add_option("--out-dir", sc_out_dir, "output directory for --table2");

    // features
    auto* ft = app.add_subcommand("features", "compute the graph-complexity feature vector");
    std::string ft_graph, ft_format = "saved", ft_layout = "full39", ft_out = "features.csv";
    NodeId ft_threshold = 2000;
    ft->add_option("--graph", ft_graph, "graph path")->required();
    ft->add_option("--format", ft_format, "saved|snap_edgelist|matrix_market|tsv");
    ft->add_option("--layout", ft_layout, "paper34|full39");
    ft->add_option("--approx-threshold", ft_threshold,
                   "node count above which betweenness/Wiener switch to sampling");
    ft->add_option("--out", ft_out, "output feature csv");

    // analyze
    auto* an = app.add_subcommand("analyze", "standardize, K-Means, PCA, agreement scores");
    std::string an_features, an_out_dir = ".";
    int an_k = 6;
    bool an_no_std = false;
    an->add_option("--features", an_features, "features csv")->required();
    an->add_option("--k", an_k, "cluster count");
    an->add_flag("--no-standardize", an_no_std, "cluster the raw feature values");
    an->add_option("--out-dir", an_out_dir, "output directory");

    // plot
    auto* pl = app.add_subcommand("plot", "render the scatter as a self-contained SVG");
    std::string pl_scatter, pl_out = "scatter.svg";
    pl->add_option("--scatter", pl_scatter, "scatter csv")->required();
    pl->add_option("--out", pl_out, "output svg");

    // run-pipeline
    auto* rp = app.add_subcommand("run-pipeline", "generate, featurize, analyze, plot");
    std::string rp_config, rp_out_dir = "pipeline-out";
    std::vector<std::string> rp_families;
    bool rp_no_std = false;
    rp->add_option("--config", rp_config, "pipeline config JSON")->required();
    rp->add_option("--out-dir", rp_out_dir, "output directory");
    rp->add_option("--families", rp_families, "subset of stylized,agent,real")
        ->delimiter(',');
    rp->add_flag("--no-standardize", rp_no_std, "cluster the raw feature values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gs->parsed())
            cmd_gen_stylized(full_argv, gs_family, gs_table3, gs_n, gs_p, gs_k, gs_d, gs_m, seed,
                             gs_out, gs_out_dir);
        else if (gp->parsed())
            cmd_gen_population(full_argv, gp_config, gp_households, seed, gp_out);
        else if (ic->parsed())
            cmd_induce_contacts(full_argv, ic_visits, ic_out);
        else if (scs->parsed())
            cmd_sample_contacts(full_argv, sc_contacts, sc_probs, sc_table2, seed, sc_out,
                                sc_out_dir);
        else if (ft->parsed())
            cmd_features(full_argv, ft_graph, ft_format, ft_layout, ft_threshold, seed, ft_out);
        else if (an->parsed())
            cmd_analyze(full_argv, an_features, an_k, seed, an_no_std, an_out_dir);
        else if (pl->parsed())
            plot_scatter(pl_scatter, pl_out);
        else if (rp->parsed()) {
            PipelineOptions opts;
            opts.config_path = rp_config;
            opts.out_dir = rp_out_dir;
            opts.seed = seed;
            opts.threads = threads;
            opts.families = rp_families;
            opts.standardize = !rp_no_std;
            return run_pipeline(opts);
        }
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
