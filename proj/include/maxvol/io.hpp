#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxvol/error.hpp"
#include "maxvol/instance.hpp"
#include "maxvol/label_cover.hpp"
#include "maxvol/solvers.hpp"
#include "maxvol/soundness.hpp"
#include "maxvol/verifier.hpp"

namespace maxvol {

using json = nlohmann::json;

// Label Cover interchange:
//   {v_count, w_count, sigma_v, sigma_w, edges: [{v, w, pi: [...]}]}

inline json to_json(const LabelCoverInstance& lc) {
  json edges = json::array();
  for (const auto& e : lc.edges) edges.push_back({{"v", e.v}, {"w", e.w}, {"pi", e.pi}});
  return {{"v_count", lc.v_count},
          {"w_count", lc.w_count},
          {"sigma_v", lc.sigma_v},
          {"sigma_w", lc.sigma_w},
          {"edges", std::move(edges)}};
}

inline LabelCoverInstance label_cover_from_json(const json& j) {
  try {
    LabelCoverInstance lc;
    lc.v_count = j.at("v_count").get<std::size_t>();
    lc.w_count = j.at("w_count").get<std::size_t>();
    lc.sigma_v = j.at("sigma_v").get<std::size_t>();
    lc.sigma_w = j.at("sigma_w").get<std::size_t>();
    for (const auto& e : j.at("edges")) {
      LabelCoverEdge ed;
      ed.v = e.at("v").get<std::size_t>();
      ed.w = e.at("w").get<std::size_t>();
      ed.pi = e.at("pi").get<std::vector<std::uint32_t>>();
      lc.edges.push_back(std::move(ed));
    }
    lc.validate();
    return lc;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("Label Cover JSON: ") + ex.what());
  } catch (const InvalidArgument& ex) {
    throw ParseError(std::string("Label Cover JSON: ") + ex.what());
  }
}

inline LabelCoverInstance parse_label_cover(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("Label Cover JSON: ") + ex.what());
  }
  return label_cover_from_json(j);
}

/// Sidecar describing a MaxVolInstance's matrix layout.
inline json instance_sidecar(const MaxVolInstance& inst) {
  json cols = json::array();
  for (std::size_t c = 0; c < inst.matrix.cols(); ++c) {
    const ColumnKey key = inst.key_of(c);
    cols.push_back({{"column", c},
                    {"side", key.side == Side::V ? "V" : "W"},
                    {"vertex", key.vertex},
                    {"label", key.label}});
  }
  json blocks = json::array();
  for (std::size_t e = 0; e < inst.source.edges.size(); ++e) {
    const auto [r0, r1] = inst.block_rows(e);
    blocks.push_back({{"edge", e},
                      {"v", inst.source.edges[e].v},
                      {"w", inst.source.edges[e].w},
                      {"row_begin", r0},
                      {"row_end", r1}});
  }
  return {{"rows", inst.matrix.rows()},
          {"cols", inst.matrix.cols()},
          {"k", inst.k},
          {"ell", inst.ell},
          {"delta", inst.delta},
          {"block_width", inst.block_width},
          {"column_index", std::move(cols)},
          {"block_index", std::move(blocks)}};
}

/// Non-finite doubles become null in JSON, so log2 volumes use a string
/// marker for -inf.
inline json log2_json(double x) {
  if (std::isinf(x) && x < 0) return "-inf";
  return x;
}

inline json to_json(const VolumeResult& v) {
  return {{"volume", v.volume},
          {"log2_volume", log2_json(v.log2_volume)},
          {"residual_norms", v.residual_norms}};
}

inline json to_json(const SolveReport& r) {
  json j = {{"strategy", std::string(to_string(r.strategy))},
            {"indices", std::vector<std::size_t>(r.selection.begin(), r.selection.end())},
            {"k", r.selection.k()},
            {"volume", r.volume.volume},
            {"log2_volume", log2_json(r.volume.log2_volume)},
            {"residual_norms", r.volume.residual_norms},
            {"steps", r.swaps_or_steps}};
  if (r.strategy == Strategy::local) j["mu"] = r.mu;
  if (r.strategy == Strategy::greedy) j["pick_order"] = r.pick_order;
  return j;
}

inline json to_json(const CheckReport& c) {
  return {{"name", c.name},       {"pass", c.pass},   {"lhs", c.lhs},        {"rhs", c.rhs},
          {"relation", c.relation}, {"slack", c.slack}, {"context", c.context}};
}

inline json to_json(const SoundnessParameters& p) {
  json j = {{"ell", p.ell},
            {"alpha", p.alpha},
            {"epsilon1", p.epsilon1},
            {"epsilon2", p.epsilon2},
            {"c", p.c},
            {"t_denominator", p.t_denominator},
            {"ell_prime", p.ell_prime},
            {"k", p.k},
            {"log2_volume_bound", p.log2_volume_bound},
            {"volume_bound", p.volume_bound}};
  j["t"] = p.t ? json(*p.t) : json(nullptr);
  j["t_defined"] = p.t.has_value();
  return j;
}

}  // namespace maxvol
