#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "linkspace/error.hpp"
#include "linkspace/io.hpp"

using namespace linkspace;

namespace {

enum Exit : int {
    kOk = 0,
    kInternal = 1,
    kImmersed = 2,
    kNotConfiguration = 3,
    kMalformed = 64,
    kIncomplete = 65,
    kPlacementEmbedded = 66,
    kUncatalogued = 67,
    kEndpointsNotEmbedded = 68,
    kInfeasibleLengths = 69,
    kChamberWall = 70,
    kUnsupported = 71,
    kNotChainComplex = 72,
    kDegenerate = 73,
    kInvalidPath = 74,
    kInconsistentLabels = 75,
    kInfeasibleCollineation = 76,
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::MalformedInput:
        case ErrorKind::InvalidArgument: return kMalformed;
        case ErrorKind::IncompletePlacement: return kIncomplete;
        case ErrorKind::NotAConfiguration: return kNotConfiguration;
        case ErrorKind::PlacementEmbedded: return kPlacementEmbedded;
        case ErrorKind::UncataloguedSingularity: return kUncatalogued;
        case ErrorKind::EndpointsNotEmbedded: return kEndpointsNotEmbedded;
        case ErrorKind::InfeasibleLengths: return kInfeasibleLengths;
        case ErrorKind::ChamberWall: return kChamberWall;
        case ErrorKind::Unsupported: return kUnsupported;
        case ErrorKind::NotAChainComplex: return kNotChainComplex;
        case ErrorKind::DegenerateGeometry: return kDegenerate;
        case ErrorKind::InvalidApproachPath: return kInvalidPath;
        case ErrorKind::InconsistentLabels: return kInconsistentLabels;
        case ErrorKind::InfeasibleCollineation: return kInfeasibleCollineation;
    }
    return kInternal;
}

struct RunConfig {
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    long budget = 2000;
    std::string format = "json";
    int samples_per_hop = 64;
    double scene_radius = 10.0;
};

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

template <class T>
std::string join_nums(const std::vector<T>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
    return os.str();
}

void emit(const RunConfig& cfg, const Json& j, const std::string& text) {
    if (cfg.format == "text")
        std::cout << text;
    else
        std::cout << j.dump(2) << '\n';
}

std::string labels_text(const LabelVector& lv) {
    std::ostringstream os;
    for (const auto& [pair, v] : lv) os << pair.first << ' ' << pair.second << ' ' << v << '\n';
    return os.str();
}

int cmd_check(const RunConfig& cfg, const std::string& lf, const std::string& pf) {
    const Linkage l = linkage_from_json(read_json_file(lf));
    const Placement p = placement_from_json(read_json_file(pf));
    require_complete(l.type(), p);
    const auto residuals = length_residuals(l, p);
    const bool immersed = is_immersed_configuration(l, p, cfg.tol);
    std::vector<EmbeddingViolation> contacts;
    if (immersed) contacts = embedding_violations(l.type(), p, cfg.tol);
    const std::string status = !immersed ? "not-a-configuration" : contacts.empty() ? "embedded" : "immersed";

    Json j;
    j["status"] = status;
    Json res = Json::object();
    for (const auto& [id, r] : residuals) res[id] = r;
    j["residuals"] = res;
    Json cs = Json::array();
    std::ostringstream text;
    text << "status " << status << '\n';
    for (const auto& [id, r] : residuals) text << "residual " << id << ' ' << r << '\n';
    for (const auto& c : contacts) {
        cs.push_back(Json{{"kind", violation_kind_name(c.kind)},
                          {"edges", c.edges},
                          {"vertices", c.vertices},
                          {"distance", c.distance}});
        text << "contact " << violation_kind_name(c.kind) << ' ' << join(c.edges, ",") << ' ' << join(c.vertices, ",")
             << '\n';
    }
    j["contacts"] = cs;
    emit(cfg, j, text.str());
    return !immersed ? kNotConfiguration : contacts.empty() ? kOk : kImmersed;
}

int cmd_labels(const RunConfig& cfg, const std::string& lf, const std::string& pf) {
    const Linkage l = linkage_from_json(read_json_file(lf));
    const Placement p = placement_from_json(read_json_file(pf));
    const LabelVector lv = label_vector(l.type(), p, cfg.tol);
    emit(cfg, labels_to_json(lv), labels_text(lv));
    return kOk;
}

int cmd_distance(const RunConfig& cfg, const std::string& lf, const std::string& af, const std::string& bf) {
    const Linkage l = linkage_from_json(read_json_file(lf));
    const Placement a = placement_from_json(read_json_file(af));
    const Placement b = placement_from_json(read_json_file(bf));
    PlannerOptions opt;
    opt.samples_per_hop = cfg.samples_per_hop;
    opt.tol = cfg.tol;
    const auto r = path_metric(l, a, b, cfg.budget, cfg.seed, opt);
    Json j{{"lower_bound", r.lower_bound}, {"upper_bound", r.upper_bound}, {"capped", r.capped}};
    std::ostringstream text;
    text << "lower_bound " << r.lower_bound << "\nupper_bound " << r.upper_bound << "\ncapped "
         << (r.capped ? "true" : "false") << '\n';
    emit(cfg, j, text.str());
    return kOk;
}

int cmd_virtual(const RunConfig& cfg, const std::string& lf, const std::string& pathf) {
    const Linkage l = linkage_from_json(read_json_file(lf));
    const PLPath path = path_from_json(read_json_file(pathf));
    const auto vc = virtual_config_from_path(l, path, 8, cfg.samples_per_hop, cfg.tol);
    emit(cfg, virtual_config_to_json(vc), labels_text(vc.completed_labels()));
    return kOk;
}

int cmd_singularity(const RunConfig& cfg, const std::string& lf, const std::string& pf) {
    const Linkage l = linkage_from_json(read_json_file(lf));
    const Placement p = placement_from_json(read_json_file(pf));
    const auto r = classify_singularity(l, p, cfg.tol);
    std::ostringstream text;
    for (const auto& f : r.features)
        text << "feature " << feature_kind_name(f.kind) << ' ' << join(f.edges, ",") << '\n';
    text << "generic " << (r.generic ? "true" : "false") << "\ncatalogued " << (r.catalogued ? "true" : "false") << '\n';
    if (r.preimage_count) text << "preimage_count " << *r.preimage_count << '\n';
    emit(cfg, singularity_to_json(r), text.str());
    return r.catalogued ? kOk : kUncatalogued;
}

int cmd_complex(const RunConfig& cfg, int lines, const std::string& rule) {
    CWComplex c;
    if (lines == 2) {
        c = build_two_line_complex();
    } else if (lines == 3) {
        c = build_three_line_complex(rule == "per-pair-label" ? ZeroCellRule::PerPairLabel : ZeroCellRule::AllCopies);
    } else {
        throw Error(ErrorKind::Unsupported, "unsupported: complexes are built for 2 or 3 lines");
    }
    const auto h = homology(c);
    Json j;
    j["lines"] = lines;
    if (lines == 3) j["zero_cell_rule"] = rule;
    j["homology"] = homology_to_json(h);
    j["complex"] = cw_to_json(c);
    std::ostringstream text;
    text << "cells " << join_nums(h.cell_counts) << "\nbetti " << join_nums(h.betti) << '\n';
    for (std::size_t k = 0; k < h.torsion.size(); ++k)
        if (!h.torsion[k].empty()) text << "torsion H" << k << ' ' << join_nums(h.torsion[k]) << '\n';
    text << "euler " << h.euler << "\neuler_from_betti " << h.euler_from_betti << '\n';
    emit(cfg, j, text.str());
    return kOk;
}

QuadLengths quad_from(const std::string& s) {
    const auto v = parse_length_list(s);
    if (v.size() != 4) throw Error(ErrorKind::MalformedInput, "malformed input: quad needs four lengths");
    return {v[0], v[1], v[2], v[3]};
}

int cmd_quad(const RunConfig& cfg, const std::string& lengths, const std::string& model) {
    const QuadLengths q = quad_from(lengths);
    const auto r = quad_chamber(q);
    Json j = quad_report_to_json(r);
    std::ostringstream text;
    text << "case " << r.arc_case << "\ncollineations " << join(r.collineations, " ") << "\nschedule "
         << r.schedule_text() << '\n';
    if (!model.empty()) {
        const auto m = quad_local_model(r.lengths, model);
        j["local_model"] = local_model_to_json(m);
        text << "local_model " << m.symbol << " exchanged " << (m.exchanged ? "true" : "false") << '\n';
    }
    emit(cfg, j, text.str());
    return kOk;
}

int cmd_chain(const RunConfig& cfg, const std::string& lengths) {
    const auto d = open_chain_descriptor(parse_length_list(lengths));
    emit(cfg, open_chain_to_json(d), d.homotopy_type + '\n');
    return kOk;
}

int cmd_pair(const RunConfig& cfg, const std::string& k1, const std::string& k2, std::optional<double> seg) {
    const auto d = pair_space_descriptor(parse_edge_kind(k1), parse_edge_kind(k2), seg);
    emit(cfg, pair_space_to_json(d), d.homotopy_type.value_or(d.construction) + '\n');
    return kOk;
}

int cmd_export(const RunConfig& cfg, const std::string& lf, const std::string& pf, const std::string& out) {
    const Linkage l = linkage_from_json(read_json_file(lf));
    const Placement p = placement_from_json(read_json_file(pf));
    require_complete(l.type(), p);
    std::ostringstream obj;
    obj.precision(17);
    obj << "# linkspace scene\n";
    std::size_t next = 1;
    for (const auto& spec : l.type().edges()) {
        const GeomEdge e = geom_edge(l.type(), p, spec.id);
        Point3 from = e.anchor(), to = e.tip();
        if (e.kind() != EdgeKind::Segment) {
            const Dir3 d = e.direction();
            to = e.anchor() + d * cfg.scene_radius;
            if (e.kind() == EdgeKind::Line) from = e.anchor() - d * cfg.scene_radius;
        }
        obj << "o " << spec.id << '\n';
        obj << "v " << from.x << ' ' << from.y << ' ' << from.z << '\n';
        obj << "v " << to.x << ' ' << to.y << ' ' << to.z << '\n';
        obj << "l " << next << ' ' << next + 1 << '\n';
        next += 2;
    }
    if (out.empty() || out == "-") {
        std::cout << obj.str();
    } else {
        std::ofstream f(out);
        if (!f) throw Error(ErrorKind::MalformedInput, "malformed input: cannot write '" + out + "'");
        f << obj.str();
    }
    return kOk;
}

void report_error(const RunConfig& cfg, const Error& e) {
    if (cfg.format == "text") {
        std::cerr << "error: " << e.what() << '\n';
    } else {
        Json j{{"error", error_kind_name(e.kind())}, {"message", e.what()}};
        std::cout << j.dump(2) << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Configuration spaces of spatial linkages"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    if (const char* env = std::getenv("LINKSPACE_TOL")) {
        try {
            cfg.tol = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "error: LINKSPACE_TOL is not a number\n";
            return kMalformed;
        }
    }
    app.add_option("--tol", cfg.tol, "contact tolerance (falls back to LINKSPACE_TOL)")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "planner seed");
    app.add_option("--budget", cfg.budget, "planner node expansions")->check(CLI::NonNegativeNumber);
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--samples-per-hop", cfg.samples_per_hop, "path validation samples per hop")->check(CLI::Range(2, 1 << 20));
    app.add_option("--scene-radius", cfg.scene_radius, "truncation radius for unbounded edges")->check(CLI::PositiveNumber);

    std::string lf, pf, pf2, out, rule = "literal", lengths, model, k1, k2;
    double seg = 0.0;
    int lines = 3;
    std::function<int()> run;

    auto* check = app.add_subcommand("check", "embedding / immersion status of a placement");
    check->add_option("linkage", lf)->required();
    check->add_option("placement", pf)->required();
    check->callback([&] { run = [&] { return cmd_check(cfg, lf, pf); }; });

    auto* labels = app.add_subcommand("labels", "linking-number label vector");
    labels->add_option("linkage", lf)->required();
    labels->add_option("placement", pf)->required();
    labels->callback([&] { run = [&] { return cmd_labels(cfg, lf, pf); }; });

    auto* dist = app.add_subcommand("distance", "path-metric bounds between two embeddings");
    dist->add_option("linkage", lf)->required();
    dist->add_option("from", pf)->required();
    dist->add_option("to", pf2)->required();
    dist->callback([&] { run = [&] { return cmd_distance(cfg, lf, pf, pf2); }; });

    auto* vc = app.add_subcommand("virtual-config", "virtual configuration at the end of an approach path");
    vc->add_option("linkage", lf)->required();
    vc->add_option("path", pf)->required();
    vc->callback([&] { run = [&] { return cmd_virtual(cfg, lf, pf); }; });

    auto* sing = app.add_subcommand("singularity", "classify a singular placement");
    sing->add_option("linkage", lf)->required();
    sing->add_option("placement", pf)->required();
    sing->callback([&] { run = [&] { return cmd_singularity(cfg, lf, pf); }; });

    auto* cx = app.add_subcommand("complex", "CW complex and homology of the completed space of lines");
    cx->add_option("--lines", lines, "2 or 3")->required();
    cx->add_option("--zero-cell-rule", rule, "three lines: gluing of the corner cells")
        ->check(CLI::IsMember({"literal", "per-pair-label"}));
    cx->callback([&] { run = [&] { return cmd_complex(cfg, lines, rule); }; });

    auto* quad = app.add_subcommand("quad", "chamber analysis of a quadrilateral");
    quad->add_option("--lengths", lengths, "a,b,c,d")->required();
    quad->add_option("--local-model", model, "collineation symbol, e.g. (acd)");
    quad->callback([&] { run = [&] { return cmd_quad(cfg, lengths, model); }; });

    auto* chain = app.add_subcommand("chain", "descriptor of an open chain");
    chain->add_option("--lengths", lengths, "comma separated, inf allowed at the ends")->required();
    chain->callback([&] { run = [&] { return cmd_chain(cfg, lengths); }; });

    auto* pair = app.add_subcommand("pair", "completed space of two generalized edges");
    pair->add_option("first", k1)->required()->check(CLI::IsMember({"segment", "half-line", "line"}));
    pair->add_option("second", k2)->required()->check(CLI::IsMember({"segment", "half-line", "line"}));
    auto* seg_opt = pair->add_option("--segment-length", seg);
    pair->callback([&] {
        run = [&] {
            return cmd_pair(cfg, k1, k2, seg_opt->count() ? std::optional<double>(seg) : std::nullopt);
        };
    });

    auto* exp = app.add_subcommand("export", "OBJ scene of a placement");
    exp->add_option("linkage", lf)->required();
    exp->add_option("placement", pf)->required();
    exp->add_option("-o,--out", out, "output file (default stdout)");
    exp->callback([&] { run = [&] { return cmd_export(cfg, lf, pf, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kMalformed;
    }

    try {
        return run();
    } catch (const Error& e) {
        report_error(cfg, e);
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
