#include "cnet/pipeline.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "cnet/analysis.hpp"
#include "cnet/contact.hpp"
#include "cnet/error.hpp"
#include "cnet/features.hpp"
#include "cnet/graph_io.hpp"
#include "cnet/rng.hpp"
#include "cnet/stylized.hpp"
#include "cnet/synthpop.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace cnet {

namespace {

struct PipelineConfig {
    std::string population_config;
    int households = 1000;
    FeatureLayout layout = FeatureLayout::Full39;
    NodeId approx_threshold = 2000;
    struct RealGraph {
        std::string name;
        std::string path;
        GraphFormat format;
        bool directed = false;
    };
    std::vector<RealGraph> real_graphs;
};

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw input_error(path + ": invalid JSON");

    fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        return fs::path(p).is_absolute() ? p : (base / p).string();
    };

    PipelineConfig cfg;
    cfg.population_config = resolve(j.at("population_config").get<std::string>());
    cfg.households = j.value("households", 1000);
    cfg.layout = layout_from_name(j.value("layout", std::string("full39")));
    cfg.approx_threshold = j.value("approx_threshold", 2000);
    for (const auto& jr : j.value("real_graphs", json::array())) {
        PipelineConfig::RealGraph rg;
        rg.name = jr.at("name").get<std::string>();
        rg.path = resolve(jr.at("path").get<std::string>());
        rg.format = format_from_name(jr.value("format", std::string("snap_edgelist")));
        rg.directed = jr.value("directed", false);
        cfg.real_graphs.push_back(std::move(rg));
    }
    return cfg;
}

bool family_enabled(const std::vector<std::string>& filter, const std::string& group) {
    if (filter.empty()) return true;
    for (const auto& f : filter)
        if (f == group) return true;
    return false;
}

} // namespace

int run_pipeline(const PipelineOptions& opts) {
    PipelineConfig cfg = load_pipeline_config(opts.config_path);
    fs::create_directories(opts.out_dir);
    fs::path out(opts.out_dir);
    fs::path graph_dir = out / "graphs";
    fs::create_directories(graph_dir);

    const std::uint64_t pop_seed = splitmix64(opts.seed ^ 1);
    const std::uint64_t contact_seed = splitmix64(opts.seed ^ 2);
    const std::uint64_t kmeans_seed = splitmix64(opts.seed ^ 3);
    const std::uint64_t feature_seed = splitmix64(opts.seed ^ 4);

    struct GraphRef {
        GraphLabel label;
        std::string path; // canonical saved form
    };
    std::vector<GraphRef> refs;

    // stage 1: stylized suite
    if (family_enabled(opts.families, "stylized")) {
        for (auto& lg : table3_suite(opts.seed)) {
            std::string path = (graph_dir / (lg.label.name + ".tsv")).string();
            if (!fs::exists(path)) {
                save_graph(path, lg.graph, lg.label);
                write_manifest(path, "gen-stylized", {"run-pipeline"}, opts.seed, {}, {path});
            }
            refs.push_back({lg.label, path});
        }
    }

    // stage 2+3: synthetic population -> visits -> contacts -> table2 graphs
    if (family_enabled(opts.families, "agent")) {
        std::string visits_path = (out / "visits.tsv").string();
        std::string contacts_path = (out / "contacts.tsv").string();

        if (!fs::exists(visits_path)) {
            PopulationConfig pc = load_population_config(cfg.population_config);
            std::vector<double> fitted = ipf_fit(pc.marginals, 1e-9, 500);
            Population pop = sample_households(pc, fitted, cfg.households, pop_seed);
            auto schedules = assign_schedules(pop, pc);
            assign_home_locations(pop);
            VisitSchedule vs = gravity_assign(pop, schedules, pop_seed);
            validate_visit_schedule(vs, pop);
            save_visits(visits_path, vs);
            write_manifest(visits_path, "gen-population", {"run-pipeline"}, pop_seed,
                           {cfg.population_config}, {visits_path});
        }
        if (!fs::exists(contacts_path)) {
            ContactMultigraph cm = induce_contacts(load_visits(visits_path));
            save_contacts(contacts_path, cm);
            write_manifest(contacts_path, "induce-contacts", {"run-pipeline"}, 0,
                           {visits_path}, {contacts_path});
        }

        bool all_present = true;
        for (const Table2Entry& entry : table2_configs())
            if (!fs::exists(graph_dir / (entry.name + ".tsv"))) all_present = false;
        if (!all_present) {
            ContactMultigraph cm = load_contacts(contacts_path);
            for (auto& lg : table2_suite(cm, contact_seed)) {
                std::string path = (graph_dir / (lg.label.name + ".tsv")).string();
                save_graph(path, lg.graph, lg.label);
                write_manifest(path, "sample-contacts", {"run-pipeline"}, contact_seed,
                               {contacts_path}, {path});
            }
        }
        for (const Table2Entry& entry : table2_configs())
            refs.push_back({{entry.name, GraphFamily::AgentSynthetic},
                            (graph_dir / (entry.name + ".tsv")).string()});
    }

    // stage 4: user-supplied real graphs
    if (family_enabled(opts.families, "real")) {
        for (const auto& rg : cfg.real_graphs) {
            if (!fs::exists(rg.path)) {
                std::cerr << "warning: real graph " << rg.name << " missing at " << rg.path
                          << ", excluded from the run\n";
                continue;
            }
            std::string path = (graph_dir / (rg.name + ".tsv")).string();
            if (!fs::exists(path)) {
                LoadedGraph loaded = load_graph(rg.path, rg.format, rg.directed);
                GraphLabel label{rg.name, GraphFamily::RealWorld};
                save_graph(path, loaded.graph, label, &loaded.original_ids);
                write_manifest(path, "load-real", {"run-pipeline"}, 0, {rg.path}, {path});
            }
            refs.push_back({{rg.name, GraphFamily::RealWorld}, path});
        }
    }

    if (refs.empty()) throw input_error("run-pipeline: no graphs selected");

    // stage 5: features, fanned out per graph; row order is fixed up front so
    // results are identical at any thread count
    std::string features_path = (out / "features.csv").string();
    if (!fs::exists(features_path)) {
        std::vector<FeatureResult> results(refs.size());
        std::atomic<size_t> cursor{0};
        auto worker = [&]() {
            while (true) {
                size_t i = cursor.fetch_add(1);
                if (i >= refs.size()) break;
                SavedGraph sg = load_saved_graph(refs[i].path);
                results[i] = extract_features(sg.graph, cfg.layout, cfg.approx_threshold,
                                              feature_seed);
            }
        };
        int n_threads = std::max(1, opts.threads);
        std::vector<std::thread> pool;
        for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        FeatureMatrix fm;
        fm.layout = cfg.layout;
        fm.slot_names = layout_slot_names(cfg.layout);
        for (size_t i = 0; i < refs.size(); ++i) {
            fm.rows.push_back(results[i].vector.values);
            fm.labels.push_back(refs[i].label);
        }
        save_feature_matrix_csv(features_path, fm);

        json prov = json::array();
        for (size_t i = 0; i < refs.size(); ++i) {
            const FeatureProvenance& p = results[i].provenance;
            prov.push_back({{"name", refs[i].label.name},
                            {"betweenness_exact", p.betweenness_exact},
                            {"wiener_exact", p.wiener_exact},
                            {"seed", p.seed},
                            {"sample_count", p.sample_count},
                            {"vdi_defaulted", p.vdi_defaulted}});
        }
        json meta = {{"layout", layout_name(cfg.layout)},
                     {"approx_threshold", cfg.approx_threshold},
                     {"pagerank", {{"damping", 0.85}, {"tol", 1e-10}}},
                     {"disconnected_convention", "reachable pairs only"},
                     {"rows", prov}};
        std::ofstream ms(features_path + ".provenance.json");
        ms << meta.dump(2) << '\n';
        write_manifest(features_path, "features", {"run-pipeline"}, feature_seed, {},
                       {features_path});
    }

    // stage 6: analyze
    std::string analysis_path = (out / "analysis.json").string();
    std::string scatter_path = (out / "scatter.csv").string();
    if (!fs::exists(analysis_path) || !fs::exists(scatter_path)) {
        FeatureMatrix fm = load_feature_matrix_csv(features_path);
        FeatureMatrix work = opts.standardize ? standardize(fm) : fm;
        int k = std::min<int>(6, static_cast<int>(work.rows.size()));
        KMeansResult km = kmeans(work, k, kmeans_seed, 32);
        Pca2Result pca = pca2(work);
        AgreementResult agree = label_agreement(km.assignments, fm.labels);

        // qualitative separation diagnostics
        std::set<int> stylized_clusters, real_clusters;
        bool any_real = false;
        for (size_t i = 0; i < fm.labels.size(); ++i) {
            GraphFamily f = fm.labels[i].family;
            if (f == GraphFamily::RealWorld) {
                real_clusters.insert(km.assignments[i]);
                any_real = true;
            } else if (f != GraphFamily::AgentSynthetic) {
                stylized_clusters.insert(km.assignments[i]);
            }
        }
        bool disjoint = true;
        for (int c : stylized_clusters)
            if (real_clusters.count(c)) disjoint = false;
        bool g_shares = false;
        for (size_t i = 0; i < fm.labels.size(); ++i) {
            const std::string& nm = fm.labels[i].name;
            if (nm == "G1" || nm == "G2" || nm == "G3" || nm == "G4")
                if (real_clusters.count(km.assignments[i])) g_shares = true;
        }

        json ja;
        ja["tool_version"] = kToolVersion;
        ja["k"] = k;
        ja["standardized"] = opts.standardize;
        ja["wcss"] = km.wcss;
        ja["zero_variance_columns"] = work.zero_variance_columns;
        for (size_t i = 0; i < fm.labels.size(); ++i)
            ja["assignments"].push_back({{"name", fm.labels[i].name},
                                         {"family", family_name(fm.labels[i].family)},
                                         {"cluster", km.assignments[i]}});
        ja["centroids"] = km.centroids;
        ja["axes"] = pca.axes;
        ja["explained_variance"] = pca.explained_variance;
        ja["second_axis_degenerate"] = pca.second_axis_degenerate;
        ja["ari"] = agree.ari;
        for (auto& [fam, purity] : agree.family_purity)
            ja["family_purity"][family_name(fam)] = purity;
        for (auto& [name, in_real] : agree.synthetic_in_real_cluster)
            ja["synthetic_in_real_cluster"][name] = in_real;
        ja["qualitative"] = {{"real_graphs_present", any_real},
                             {"stylized_real_disjoint", disjoint},
                             {"g1_g4_shares_real_cluster", g_shares}};
        std::ofstream as(analysis_path);
        as << ja.dump(2) << '\n';
        as.close();

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
        write_manifest(analysis_path, "analyze", {"run-pipeline"}, kmeans_seed, {features_path},
                       {analysis_path, scatter_path});

        if (!any_real)
            std::cerr << "note: no real-world graphs supplied; the real-vs-synthetic "
                         "comparison was skipped\n";
    }

    // stage 7: plot
    std::string svg_path = (out / "scatter.svg").string();
    if (!fs::exists(svg_path)) {
        plot_scatter(scatter_path, svg_path);
        write_manifest(svg_path, "plot", {"run-pipeline"}, 0, {scatter_path}, {svg_path});
    }
    return 0;
}

} // namespace cnet
