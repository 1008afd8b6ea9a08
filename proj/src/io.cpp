#include "linkspace/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "linkspace/error.hpp"

namespace linkspace {

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorKind::MalformedInput, "malformed input: " + msg); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string as_string(const Json& j, const char* what) {
    if (!j.is_string()) malformed(std::string(what) + " must be a string");
    return j.get<std::string>();
}

double as_number(const Json& j, const char* what) {
    if (!j.is_number()) malformed(std::string(what) + " must be a number");
    return j.get<double>();
}

} // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) malformed("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        malformed("'" + path + "': " + e.what());
    }
}

EdgeKind parse_edge_kind(const std::string& s) {
    if (s == "segment") return EdgeKind::Segment;
    if (s == "half-line") return EdgeKind::HalfLine;
    if (s == "line") return EdgeKind::Line;
    malformed("unknown edge kind '" + s + "'");
}

Linkage linkage_from_json(const Json& j) {
    const Json& vs = field(j, "vertices");
    const Json& es = field(j, "edges");
    if (!vs.is_array() || !es.is_array()) malformed("vertices and edges must be arrays");
    std::vector<std::string> vertices;
    for (const auto& v : vs) vertices.push_back(as_string(v, "vertex id"));
    std::vector<EdgeSpec> edges;
    std::map<std::string, double> lengths;
    for (const auto& e : es) {
        EdgeSpec spec;
        spec.id = as_string(field(e, "id"), "edge id");
        spec.kind = e.contains("kind") ? parse_edge_kind(as_string(e.at("kind"), "edge kind")) : EdgeKind::Segment;
        const Json& ends = field(e, "ends");
        if (!ends.is_array() || ends.size() != 2) malformed("edge '" + spec.id + "' needs two ends");
        spec.ends = {as_string(ends[0], "end"), as_string(ends[1], "end")};
        if (e.contains("length")) {
            if (spec.kind != EdgeKind::Segment) malformed("only segments carry a length");
            lengths[spec.id] = as_number(e.at("length"), "length");
        }
        edges.push_back(spec);
    }
    std::optional<std::string> base;
    if (j.contains("base_edge")) base = as_string(j.at("base_edge"), "base_edge");
    return Linkage(LinkageType(vertices, edges, base), lengths);
}

Json linkage_to_json(const Linkage& l) {
    Json j;
    j["vertices"] = l.type().vertices();
    Json es = Json::array();
    for (const auto& e : l.type().edges()) {
        Json je;
        je["id"] = e.id;
        je["kind"] = edge_kind_name(e.kind);
        je["ends"] = {e.ends[0], e.ends[1]};
        if (e.kind == EdgeKind::Segment) je["length"] = l.length(e.id);
        es.push_back(je);
    }
    j["edges"] = es;
    if (l.type().base_edge_explicit()) j["base_edge"] = l.type().base_edge();
    return j;
}

Placement placement_from_json(const Json& j) {
    const Json& pos = field(j, "positions");
    if (!pos.is_object()) malformed("positions must be an object");
    Placement p;
    for (const auto& [id, xyz] : pos.items()) {
        if (!xyz.is_array() || xyz.size() != 3) malformed("position of '" + id + "' must be [x,y,z]");
        p[id] = Vec3{as_number(xyz[0], "coordinate"), as_number(xyz[1], "coordinate"), as_number(xyz[2], "coordinate")};
    }
    return p;
}

Json vec_to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Json placement_to_json(const Placement& p) {
    Json pos = Json::object();
    for (const auto& [id, x] : p) pos[id] = vec_to_json(x);
    return Json{{"positions", pos}};
}

PLPath path_from_json(const Json& j) {
    const Json& w = field(j, "waypoints");
    if (!w.is_array() || w.size() < 2) malformed("a path needs at least two waypoints");
    PLPath p;
    for (const auto& x : w) p.waypoints.push_back(placement_from_json(x));
    return p;
}

Json path_to_json(const PLPath& p) {
    Json w = Json::array();
    for (const auto& x : p.waypoints) w.push_back(placement_to_json(x));
    return Json{{"waypoints", w}};
}

Json labels_to_json(const LabelVector& lv) {
    Json out = Json::array();
    for (const auto& [pair, v] : lv) out.push_back(Json{{"pair", {pair.first, pair.second}}, {"label", v}});
    return out;
}

Json virtual_config_to_json(const VirtualConfiguration& vc) {
    Json j;
    j["limit"] = placement_to_json(vc.limit);
    Json ls = Json::array();
    for (const auto& lv : vc.labels) ls.push_back(labels_to_json(lv));
    j["labels"] = ls;
    j["completed_labels"] = labels_to_json(vc.completed_labels());
    return j;
}

Json feature_to_json(const SingularFeature& f) {
    Json j;
    j["kind"] = feature_kind_name(f.kind);
    j["edges"] = f.edges;
    j["vertices"] = f.vertices;
    Json pairs = Json::array();
    for (const auto& p : f.pairs) pairs.push_back({p.first, p.second});
    j["pairs"] = pairs;
    Json locs = Json::array();
    for (const auto& l : f.locations) locs.push_back(vec_to_json(l));
    j["locations"] = locs;
    j["multiplicity"] = f.multiplicity;
    j["transverse"] = f.transverse;
    j["coplanar"] = f.coplanar ? Json(*f.coplanar) : Json(nullptr);
    j["arms_same_side"] = f.arms_same_side ? Json(*f.arms_same_side) : Json(nullptr);
    j["closed_elbow"] = f.closed_elbow;
    j["along_arm"] = f.along_arm;
    j["straight_elbow"] = f.straight_elbow;
    j["opposite_sides"] = f.opposite_sides ? Json(*f.opposite_sides) : Json(nullptr);
    j["side_signs"] = f.side_signs;
    return j;
}

Json singularity_to_json(const SingularityReport& r) {
    Json j;
    Json fs = Json::array();
    for (const auto& f : r.features) fs.push_back(feature_to_json(f));
    j["features"] = fs;
    j["generic"] = r.generic;
    j["catalogued"] = r.catalogued;
    j["preimage_count"] = r.preimage_count ? Json(*r.preimage_count) : Json(nullptr);
    if (r.label_classes) {
        Json cls = Json::array();
        for (const auto& lv : *r.label_classes) cls.push_back(labels_to_json(lv));
        j["label_classes"] = cls;
    } else {
        j["label_classes"] = nullptr;
    }
    return j;
}

Json cw_to_json(const CWComplex& c) {
    Json j;
    Json cells = Json::array();
    Json dims = Json::array();
    for (int k = 0; k <= c.dimension(); ++k) {
        cells.push_back(c.cells(k));
        dims.push_back(c.count(k));
    }
    j["cells"] = cells;
    j["dims"] = dims;
    Json bd = Json::array();
    for (int k = 0; k <= c.dimension(); ++k) {
        Json triples = Json::array();
        for (const auto& e : c.boundary_entries(k)) triples.push_back({e.row, e.col, e.coeff});
        bd.push_back(triples);
    }
    j["boundary"] = bd;
    return j;
}

CWComplex cw_from_json(const Json& j) {
    const Json& cells = field(j, "cells");
    const Json& bd = field(j, "boundary");
    if (!cells.is_array() || !bd.is_array() || bd.size() != cells.size()) malformed("cells and boundary must align");
    CWComplex c;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        std::vector<Chain> boundaries(cells[k].size());
        for (const auto& t : bd[k]) {
            if (!t.is_array() || t.size() != 3 || k == 0) malformed("bad boundary triple");
            const auto row = t[0].get<std::size_t>(), col = t[1].get<std::size_t>();
            if (col >= boundaries.size() || row >= cells[k - 1].size()) malformed("boundary index out of range");
            boundaries[col][cells[k - 1][row].get<std::string>()] += t[2].get<long>();
        }
        for (std::size_t i = 0; i < cells[k].size(); ++i) c.add_cell(static_cast<int>(k), as_string(cells[k][i], "cell id"), boundaries[i]);
    }
    return c;
}

Json homology_to_json(const HomologyReport& h) {
    Json j;
    j["cell_counts"] = h.cell_counts;
    j["betti"] = h.betti;
    Json tor = Json::array();
    for (const auto& t : h.torsion) {
        Json row = Json::array();
        for (const auto& d : t) row.push_back(d.str());
        tor.push_back(row);
    }
    j["torsion"] = tor;
    j["euler"] = h.euler;
    j["euler_from_betti"] = h.euler_from_betti;
    return j;
}

namespace {

const char* fiber_kind_name(FiberEntry::Kind k) {
    switch (k) {
        case FiberEntry::Kind::Endpoint: return "endpoint";
        case FiberEntry::Kind::Span: return "span";
        case FiberEntry::Kind::Transition: return "transition";
    }
    return "span";
}

double degrees(double rad) { return rad * 180.0 / 3.14159265358979323846; }

} // namespace

Json quad_report_to_json(const QuadReport& r) {
    Json j;
    j["input"] = {r.input.l1, r.input.l2, r.input.l3, r.input.l4};
    j["lengths"] = {r.lengths.l1, r.lengths.l2, r.lengths.l3, r.lengths.l4};
    j["source_sides"] = r.source;
    j["normalized"] = r.normalized;
    j["sum_inequality"] = r.ineq_sum;
    j["difference_inequality"] = r.ineq_diff;
    j["arc_case"] = r.arc_case;
    j["collineations"] = r.collineations;
    j["alpha_min_deg"] = degrees(r.alpha_min);
    j["alpha_max_deg"] = degrees(r.alpha_max);
    Json sched = Json::array();
    for (const auto& e : r.fiber_schedule) {
        Json je;
        je["kind"] = fiber_kind_name(e.kind);
        je["alpha_from_deg"] = degrees(e.alpha_from);
        je["alpha_to_deg"] = degrees(e.alpha_to);
        je["fiber"] = e.fiber;
        je["at"] = e.at ? Json(*e.at) : Json(nullptr);
        sched.push_back(je);
    }
    j["fiber_schedule"] = sched;
    j["schedule"] = r.schedule_text();
    j["schedule_derived"] = r.schedule_derived;
    return j;
}

Json local_model_to_json(const QuadLocalModel& m) {
    Json j;
    j["collineation"] = m.symbol;
    j["U1"] = m.thickened_torus;
    j["U2"] = m.split_torus;
    j["gluing"] = m.gluing;
    j["singular_point"] = m.singular_point;
    j["convex_point"] = m.convex_point;
    j["split_component"] = m.split_component;
    j["exchanged"] = m.exchanged;
    j["exchange_rule"] = m.exchange_rule ? Json(*m.exchange_rule) : Json(nullptr);
    return j;
}

Json open_chain_to_json(const OpenChainDescriptor& d) {
    Json j;
    j["links"] = d.links;
    j["reduced_space"] = d.homotopy_type;
    j["relation"] = d.homeomorphism ? "homeomorphic" : "homotopy-equivalent";
    j["coordinates"] = d.coordinates;
    return j;
}

Json pair_space_to_json(const PairSpaceDescriptor& d) {
    Json j;
    j["kinds"] = d.kinds;
    j["chart"] = d.chart;
    j["relations"] = d.relations;
    j["slit_condition"] = d.slit_condition ? Json(*d.slit_condition) : Json(nullptr);
    j["homotopy_type"] = d.homotopy_type ? Json(*d.homotopy_type) : Json(nullptr);
    j["construction"] = d.construction;
    j["completion_equals_blowup"] = d.completion_equals_blowup;
    j["framed_factors"] = d.framed_factors;
    return j;
}

std::vector<double> parse_length_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "inf" || tok == "∞" || tok == "Infinity") {
            out.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            malformed("bad length '" + tok + "'");
        }
    }
    if (out.empty()) malformed("empty length list");
    return out;
}

} // namespace linkspace
