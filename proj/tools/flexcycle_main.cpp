#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "flexcycle/analysis.hpp"
#include "flexcycle/flip.hpp"
#include "flexcycle/json_io.hpp"
#include "flexcycle/walks.hpp"

namespace fx = flexcycle;
using nlohmann::json;

namespace {

int exit_code(const fx::Error& e) {
    switch (e.kind()) {
        case fx::ErrorKind::Validation: return 2;
        case fx::ErrorKind::Rigid: return 3;
        case fx::ErrorKind::Numerical: return 4;
    }
    return 1;
}

fx::SkeletonDocument load_input(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".off") {
        std::ifstream in(path);
        if (!in) throw fx::validation_error("cannot open file: " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return fx::skeleton_from_off(buffer.str());
    }
    return fx::skeleton_from_json(fx::load_json_file(path));
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = fx::canonical_dump(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        fx::write_text_file(out_path, text);
    }
}

struct CommonFlags {
    std::string input;
    std::string out;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flexcycle: zero-sum cycle analysis of flexible polyhedra"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("flexcycle ") + fx::kVersion);

    // ---- analyze ----
    CommonFlags an;
    fx::AnalyzeOptions an_opts;
    std::string an_flex_path, an_mode = "general";
    std::vector<std::string> an_pin;
    auto* analyze = app.add_subcommand("analyze",
                                       "classify edges along a flex and search "
                                       "zero-sum cycle certificates");
    analyze->add_option("input", an.input, "skeleton+realization JSON (or .off)")
        ->required();
    analyze->add_option("--out", an.out, "write the report here instead of stdout");
    analyze->add_option("--flex", an_flex_path, "use this flex file instead of tracing");
    analyze->add_option("--step", an_opts.step, "continuation step size");
    analyze->add_option("--samples", an_opts.max_samples, "number of flex samples");
    analyze->add_option("--tol", an_opts.zero_sum_tol, "zero-sum tolerance");
    analyze->add_option("--max-len", an_opts.max_len, "maximum cycle length");
    analyze->add_option("--pin", an_pin, "pin triangle: w1 w2 n")->expected(3);
    analyze->add_option("--mode", an_mode, "cycle mode: general|induced")
        ->check(CLI::IsMember({"general", "induced"}));
    analyze->add_flag("--exact", an_opts.exact, "exact integer-length sign solving");

    // ---- flex ----
    CommonFlags fl;
    fx::AnalyzeOptions fl_opts;
    std::vector<std::string> fl_pin;
    auto* flexcmd = app.add_subcommand("flex", "trace a flex and write its samples");
    flexcmd->add_option("input", fl.input, "skeleton+realization JSON (or .off)")
        ->required();
    flexcmd->add_option("--out", fl.out, "write the flex here instead of stdout");
    flexcmd->add_option("--step", fl_opts.step, "continuation step size");
    flexcmd->add_option("--samples", fl_opts.max_samples, "number of flex samples");
    flexcmd->add_option("--pin", fl_pin, "pin triangle: w1 w2 n")->expected(3);

    // ---- walks ----
    CommonFlags wk;
    std::string wk_coloring, wk_econst;
    std::vector<std::string> wk_seed, wk_edge;
    std::size_t wk_cap = 100000;
    auto* walks = app.add_subcommand("walks",
                                     "red/blue walks, red-walk cycle, and "
                                     "red-achievable search");
    walks->add_option("input", wk.input, "skeleton JSON")->required();
    walks->add_option("--coloring", wk_coloring, "coloring or rho_infinity JSON")
        ->required();
    walks->add_option("--seed", wk_seed, "seed edge: w1 s")->expected(2)->required();
    walks->add_option("--edge", wk_edge, "distinguished edge w1 w2 for the cycle")
        ->expected(2);
    walks->add_option("--e-const", wk_econst, "constant-angle edge set JSON");
    walks->add_option("--state-cap", wk_cap, "flip-state exploration cap");
    walks->add_option("--out", wk.out, "write the result here instead of stdout");

    // ---- flip ----
    CommonFlags fp;
    std::vector<std::string> fp_edges;
    auto* flip = app.add_subcommand("flip", "flip the skeleton on a sequence of edges");
    flip->add_option("input", fp.input, "skeleton JSON")->required();
    flip->add_option("--edge", fp_edges, "edge to flip: u v (repeatable)")
        ->type_size(2)
        ->required();
    flip->add_option("--out", fp.out, "write the skeleton here instead of stdout");

    // ---- triangulate ----
    CommonFlags tr;
    auto* triangulate = app.add_subcommand("triangulate",
                                           "fan-triangulate all faces, keeping "
                                           "the vertex set");
    triangulate->add_option("input", tr.input, "skeleton JSON (or .off)")->required();
    triangulate->add_option("--out", tr.out, "write the skeleton here instead of stdout");

    // ---- verify ----
    CommonFlags vf;
    std::string vf_cert, vf_forbidden;
    double vf_tol = -1.0;
    auto* verify = app.add_subcommand("verify", "re-check a cycle certificate");
    verify->add_option("input", vf.input, "skeleton+realization JSON (or .off)")
        ->required();
    verify->add_option("certificate", vf_cert, "certificate JSON")->required();
    verify->add_option("--e-const", vf_forbidden, "forbidden edge set JSON");
    verify->add_option("--tol", vf_tol, "verification tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            if (!an_flex_path.empty()) {
                an_opts.supplied_flex = fx::flex_from_json(fx::load_json_file(an_flex_path));
            }
            if (!an_pin.empty()) an_opts.pin = {an_pin[0], an_pin[1], an_pin[2]};
            an_opts.induced = an_mode == "induced";
            emit(fx::analyze(load_input(an.input), an_opts), an.out);
        } else if (*flexcmd) {
            if (!fl_pin.empty()) fl_opts.pin = {fl_pin[0], fl_pin[1], fl_pin[2]};
            emit(fx::flex_to_json(fx::run_flex(load_input(fl.input), fl_opts)), fl.out);
        } else if (*walks) {
            const fx::SkeletonDocument doc = load_input(wk.input);
            fx::TriangularSkeleton t(doc.skeleton);
            fx::ColoringDocument cd =
                fx::coloring_from_json(fx::load_json_file(wk_coloring));
            const fx::Edge seed(wk_seed[0], wk_seed[1]);
            cd.coloring.seed = seed;

            const fx::WalkPair walk = fx::red_blue_walks(t, cd.coloring, seed);
            json out;
            out["red_walk"] = {{"vertices", walk.red_vertices},
                               {"edges", fx::edge_set_to_json(walk.red_edges)}};
            out["blue_walk"] = {{"vertices", walk.blue_vertices},
                                {"edges", fx::edge_set_to_json(walk.blue_edges)}};
            out["class_edges"] = fx::edge_set_to_json(walk.class_edges);

            // Cycle through the distinguished edge; defaults to the smallest
            // red-walk edge at w1.
            std::optional<fx::Edge> cyc_edge;
            if (!wk_edge.empty()) {
                cyc_edge = fx::Edge(wk_edge[0], wk_edge[1]);
            } else {
                for (const fx::Edge& e : walk.red_edges) {
                    if (e.contains(seed.a) || e.contains(seed.b)) {
                        cyc_edge = e;
                        break;
                    }
                }
            }
            if (cyc_edge && walk.red_edges.count(*cyc_edge)) {
                try {
                    out["cycle"] = fx::cycle_in_red_walk(walk, *cyc_edge);
                    out["cycle_edge"] = json::array({cyc_edge->a, cyc_edge->b});
                } catch (const fx::Error& e) {
                    out["cycle"] = nullptr;
                    out["cycle_error"] = e.what();
                }
            }

            std::set<fx::Edge> e_const;
            if (!wk_econst.empty()) {
                e_const = fx::edge_set_from_json(fx::load_json_file(wk_econst));
            }
            const fx::RedAchievableResult ra =
                fx::red_achievable(t, cd.coloring, e_const, wk_cap);
            json witnesses = json::object();
            for (const auto& [v, flips] : ra.witnesses) {
                json seq = json::array();
                for (const fx::Edge& e : flips) seq.push_back(json::array({e.a, e.b}));
                witnesses[v] = std::move(seq);
            }
            out["red_achievable"] = {{"vertices", ra.achievable},
                                     {"witnesses", std::move(witnesses)},
                                     {"truncated", ra.truncated},
                                     {"states_explored", ra.states_explored}};

            json checks = json::array();
            for (const fx::Edge& e : e_const) {
                const fx::RedConstEdgeReport r =
                    fx::check_red_const_edge(t, e, ra.achievable);
                checks.push_back({{"edge", json::array({e.a, e.b})},
                                  {"applicable", r.applicable},
                                  {"pass", r.pass},
                                  {"detail", r.detail}});
            }
            out["red_const_edge_checks"] = std::move(checks);
            emit(out, wk.out);
        } else if (*flip) {
            const fx::SkeletonDocument doc = load_input(fp.input);
            fx::TriangularSkeleton t(doc.skeleton);
            std::vector<fx::Edge> sequence;
            for (std::size_t i = 0; i + 1 < fp_edges.size(); i += 2) {
                sequence.emplace_back(fp_edges[i], fp_edges[i + 1]);
            }
            const fx::TriangularSkeleton flipped = fx::flip_sequence(t, sequence);
            emit(fx::skeleton_to_json(flipped.skeleton(), doc.realization), fp.out);
        } else if (*triangulate) {
            const fx::SkeletonDocument doc = load_input(tr.input);
            const fx::FanTriangulation fan = fx::triangulate_fan(doc.skeleton);
            json out = fx::skeleton_to_json(fan.skeleton.skeleton(), doc.realization);
            out["diagonals"] = fx::edge_set_to_json(fan.diagonals);
            emit(out, tr.out);
        } else if (*verify) {
            const fx::SkeletonDocument doc = load_input(vf.input);
            const fx::Realization* rho =
                doc.realization ? &*doc.realization : nullptr;
            if (!rho) throw fx::validation_error("verify needs a realization");
            json cj = fx::load_json_file(vf_cert);
            if (cj.is_object() && cj.contains("certificate")) cj = cj.at("certificate");
            const fx::CycleCertificate cert = fx::certificate_from_json(cj);
            const fx::EdgeLengthMap lambda = fx::edge_length_map(doc.skeleton, *rho);
            std::set<fx::Edge> forbidden = cert.avoided;
            if (!vf_forbidden.empty()) {
                forbidden = fx::edge_set_from_json(fx::load_json_file(vf_forbidden));
            }
            double tol = vf_tol;
            if (tol < 0) {
                double max_lambda = 0;
                for (const auto& [e, len] : lambda) max_lambda = std::max(max_lambda, len);
                tol = 1e-8 * max_lambda;
            }
            const bool ok = fx::verify_certificate(cert, lambda, forbidden, tol);
            json out = {{"valid", ok}};
            emit(out, vf.out);
            if (!ok) return 2;
        }
    } catch (const fx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
