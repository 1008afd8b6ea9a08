#pragma once
#include <json.hpp>
#include <string>

#include "linkspace/chains.hpp"
#include "linkspace/cw_complex.hpp"
#include "linkspace/homology.hpp"
#include "linkspace/lines.hpp"
#include "linkspace/linkage.hpp"
#include "linkspace/singularity.hpp"
#include "linkspace/virtual_space.hpp"

namespace linkspace {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);

EdgeKind parse_edge_kind(const std::string& s);

Linkage linkage_from_json(const Json& j);
Json linkage_to_json(const Linkage& l);

Placement placement_from_json(const Json& j);
Json placement_to_json(const Placement& p);

PLPath path_from_json(const Json& j);
Json path_to_json(const PLPath& p);

Json vec_to_json(const Vec3& v);
Json labels_to_json(const LabelVector& lv);
Json virtual_config_to_json(const VirtualConfiguration& vc);
Json feature_to_json(const SingularFeature& f);
Json singularity_to_json(const SingularityReport& r);
Json cw_to_json(const CWComplex& c);
CWComplex cw_from_json(const Json& j);
Json homology_to_json(const HomologyReport& h);
Json quad_report_to_json(const QuadReport& r);
Json local_model_to_json(const QuadLocalModel& m);
Json open_chain_to_json(const OpenChainDescriptor& d);
Json pair_space_to_json(const PairSpaceDescriptor& d);

// Comma-separated numbers, "inf" accepted; range checks are left to the caller.
std::vector<double> parse_length_list(const std::string& s);

} // namespace linkspace
