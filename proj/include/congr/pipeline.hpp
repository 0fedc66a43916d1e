#pragma once

// The analysis pipeline: class table -> richness spectrum -> good k values ->
// rich-motion sets with group energies -> coset detection -> energy chains ->
// geometric extraction, with every verified inequality carried in the report
// next to its exact operands. Identical input and config produce a
// byte-identical report.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congr/cosets.hpp"
#include "congr/generators.hpp"
#include "congr/group_energy.hpp"
#include "congr/io.hpp"
#include "congr/motions.hpp"
#include "congr/point_energy.hpp"
#include "congr/point_set.hpp"
#include "congr/structure.hpp"
#include "congr/triangles.hpp"

namespace congr {

enum class KPolicy { largest_good, all_good };

struct AnalysisConfig {
  TripleConvention triple_convention = TripleConvention::all_triples;
  std::optional<std::uint64_t> tau_vertical;  // empty = auto threshold scan
  std::optional<std::uint64_t> tau_torus;
  KPolicy k_policy = KPolicy::largest_good;
  Rational c3_line = Rational(2);
  bool emit_svg = false;
};

inline AnalysisConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
  detail::check_schema_version(doc, kConfigSchemaVersion, "config");
  AnalysisConfig cfg;
  if (auto it = doc.find("triple_convention"); it != doc.end()) {
    std::string v = it->is_string() ? it->get<std::string>() : "";
    if (v == "all_P3") cfg.triple_convention = TripleConvention::all_triples;
    else if (v == "distinct_points") cfg.triple_convention = TripleConvention::distinct_points;
    else throw ValidationError("config.triple_convention: expected 'all_P3' or 'distinct_points'");
  }
  auto read_tau = [&](const char* name, std::optional<std::uint64_t>& out) {
    auto it = doc.find(name);
    if (it == doc.end()) return;
    if (it->is_string() && it->get<std::string>() == "auto") return;
    bool ok = it->is_number_unsigned() ||
              (it->is_number_integer() && it->get<std::int64_t>() >= 0);
    if (!ok || it->get<std::int64_t>() < 2) {
      throw ValidationError(std::string("config.") + name + ": expected 'auto' or an integer >= 2");
    }
    out = static_cast<std::uint64_t>(it->get<std::int64_t>());
  };
  read_tau("tau_vertical", cfg.tau_vertical);
  read_tau("tau_torus", cfg.tau_torus);
  if (auto it = doc.find("k_policy"); it != doc.end()) {
    std::string v = it->is_string() ? it->get<std::string>() : "";
    if (v == "largest_good") cfg.k_policy = KPolicy::largest_good;
    else if (v == "all_good") cfg.k_policy = KPolicy::all_good;
    else throw ValidationError("config.k_policy: expected 'largest_good' or 'all_good'");
  }
  if (auto it = doc.find("C3_line"); it != doc.end()) {
    cfg.c3_line = detail::require_rational(*it, "config.C3_line");
    if (cfg.c3_line < 1) throw ValidationError("config.C3_line: must be >= 1");
  }
  if (auto it = doc.find("emit_svg"); it != doc.end()) {
    if (!it->is_boolean()) throw ValidationError("config.emit_svg: expected a boolean");
    cfg.emit_svg = it->get<bool>();
  }
  return cfg;
}

// One named inequality with its exact operands; the boolean is recomputable
// from the strings.
struct InequalityCheck {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool holds = false;
  std::string relation = "<=";
};

struct KSection {
  std::uint32_t k = 0;
  std::uint64_t s_size = 0;
  BigInt group_E;
  BigInt star_E;
  Lemma31Report lemma31;
  bool shkredov_holds = false;
  Rational corollary_size_threshold;   // |P| / (3 M)
  bool corollary_size_holds = false;
  Rational corollary_energy_bound;     // |S|^3 / (3 C M)^7
  bool corollary_energy_holds = false;
  std::uint64_t tau_vertical_used = 0;  // 0 = nothing found at any threshold
  std::uint64_t tau_torus_used = 0;
  DetectionReport detection;
  std::vector<Prop43Report> prop43;
  std::optional<CircleExtraction> circle;
  bool vertical_branch = false;
  bool torus_branch = false;
};

struct Report {
  std::uint64_t n = 0;
  TripleConvention convention = TripleConvention::all_triples;
  std::uint64_t class_count = 0;
  std::uint64_t class_count_sorted_keys = 0;
  std::uint64_t total_triples = 0;
  Rational m_emp;
  std::uint64_t distinct_distances = 0;
  BigInt triangle_E;
  CauchySchwarzCheck eq6;
  BigInt se2_te;
  BigInt spectrum_weight_k2;
  std::vector<SpectrumEntry> spectrum_exact;
  std::uint32_t max_richness = 0;
  Rational c_emp;
  std::vector<std::uint32_t> good_ks;
  std::vector<KSection> sections;
  BigInt additive_E;
  std::uint64_t sumset = 0;
  BigInt mult_E;
  std::optional<LineFamily> lines;
  double sigma = 0.0;
  std::vector<InequalityCheck> checklist;
  std::string verdict;
  PointSet points;
};

namespace detail {

// Threshold policy: explicit tau, or scan max(4, ceil(|S|/8)) halving down
// and keep the first (largest) threshold that detects anything. The auto
// scan stops at 3: a 2-member coset is witnessed by a single pair, which any
// two group-plane points with distinct abscissae provide, so it is never
// evidence. Pairs remain reachable through an explicit threshold.
inline std::uint64_t resolve_tau(std::optional<std::uint64_t> configured, std::uint64_t s_size,
                                 std::uint64_t largest_found) {
  if (configured) return *configured;
  std::uint64_t tau = std::max<std::uint64_t>(4, (s_size + 7) / 8);
  while (tau > 3 && largest_found < tau) tau = std::max<std::uint64_t>(3, (tau + 1) / 2);
  return largest_found >= tau ? tau : 0;
}

inline std::string verdict_string(bool line_found, bool circle_found, bool had_good_k) {
  if (!had_good_k) return "no near-optimal structure (no good k)";
  if (line_found && circle_found) return "line and circle structure";
  if (line_found) return "line structure";
  if (circle_found) return "circle structure";
  return "no structure detected";
}

}  // namespace detail

inline Report analyze(const PointSet& P, const AnalysisConfig& cfg = AnalysisConfig()) {
  if (P.size() < 3) throw ValidationError("analyze: need at least 3 points");
  Report rep;
  rep.points = P;
  rep.n = P.size();
  rep.convention = cfg.triple_convention;

  // Triangle-class side.
  ClassTable table = class_table(P, cfg.triple_convention);
  rep.class_count = table.class_count();
  rep.class_count_sorted_keys = table.sorted_key_class_count();
  rep.total_triples = table.total_triples();
  rep.m_emp = Rational(BigInt(rep.class_count),
                       BigInt(static_cast<unsigned long>(rep.n)) * rep.n);
  rep.m_emp.canonicalize();
  rep.distinct_distances = distinct_distance_count(P);
  rep.triangle_E = table.energy();
  rep.eq6 = cauchy_schwarz_check(table);

  // Rigid-motion side.
  MotionTable motions = enumerate_motions(P);
  RichnessSpectrum sp = spectrum(motions);
  rep.spectrum_exact = sp.exact();
  rep.max_richness = sp.max_richness();
  rep.se2_te = se2_triple_energy(sp);
  rep.spectrum_weight_k2 = sp.weighted_cumulative_k2(3);
  rep.c_emp = guth_katz_ratio(sp, rep.n);
  rep.good_ks = good_ks(sp, rep.n, rep.m_emp, rep.c_emp);

  // Baseline point energies.
  RepFn sums = sum_rep(P);
  rep.additive_E = sums.energy();
  rep.sumset = sums.distinct_values();
  rep.mult_E = multiplicative_energy(P);

  auto add_check = [&](std::string name, std::string lhs, std::string rhs, bool holds,
                       std::string relation = "<=") {
    rep.checklist.push_back(InequalityCheck{std::move(name), std::move(lhs), std::move(rhs),
                                            holds, std::move(relation)});
  };

  add_check("cauchy_schwarz_triangle", rep.eq6.lhs.get_str(), rep.eq6.rhs.get_str(),
            rep.eq6.holds);
  add_check("triangle_energy_dominates_distinct_triple_motions", rep.se2_te.get_str(),
            rep.triangle_E.get_str(), rep.se2_te <= rep.triangle_E);
  {
    // Rigid-motion count bound summed over k (diagnostic, holds by the
    // definition of the empirical constant).
    BigInt n4 = bigint_pow(BigInt(static_cast<unsigned long>(rep.n)), 4);
    Rational rhs = rep.c_emp * Rational(n4);
    add_check("rich_motion_weight_sum", rep.spectrum_weight_k2.get_str(), fraction_str(rhs),
              Rational(rep.spectrum_weight_k2) <= rhs);
    // The same weight sum against both key conventions of the class count;
    // reported, not asserted (the conventions deliberately differ).
    BigInt n6 = bigint_pow(BigInt(static_cast<unsigned long>(rep.n)), 6);
    BigInt rhs_ordered = BigInt(rep.class_count) * rep.spectrum_weight_k2;
    add_check("weighted_spectrum_vs_ordered_classes [report-only]", n6.get_str(),
              rhs_ordered.get_str(), n6 <= rhs_ordered);
    BigInt rhs_sorted = BigInt(rep.class_count_sorted_keys) * rep.spectrum_weight_k2;
    add_check("weighted_spectrum_vs_sorted_classes [report-only]", n6.get_str(),
              rhs_sorted.get_str(), n6 <= rhs_sorted);
  }
  {
    BigInt n4 = bigint_pow(BigInt(static_cast<unsigned long>(rep.n)), 4);
    BigInt lhs = n4;
    BigInt rhs = rep.additive_E * BigInt(rep.sumset);
    add_check("sumset_energy_lower_bound", lhs.get_str(), rhs.get_str(), lhs <= rhs);
  }

  // Good-k sections.
  std::vector<std::uint32_t> chosen;
  if (!rep.good_ks.empty()) {
    if (cfg.k_policy == KPolicy::largest_good) chosen.push_back(rep.good_ks.back());
    else chosen = rep.good_ks;
  }

  bool line_found = false;
  bool circle_found = false;

  for (std::uint32_t k : chosen) {
    KSection sec;
    sec.k = k;
    std::vector<RigidMotion> S = rich_motions(motions, k);
    validate_motion_set(S);
    sec.s_size = S.size();

    GroupEnergy ge = group_energy(S);
    sec.group_E = ge.energy;
    sec.star_E = star_energy(S);
    sec.shkredov_holds = sec.star_E <= sec.group_E;
    sec.lemma31 = lemma31_from_energy(rep.n, k, sec.s_size, rep.c_emp, sec.group_E);

    sec.corollary_size_threshold = Rational(static_cast<unsigned long>(rep.n)) / (3 * rep.m_emp);
    sec.corollary_size_holds =
        Rational(static_cast<unsigned long>(sec.s_size)) >= sec.corollary_size_threshold;
    Rational denom = rational_pow(3 * rep.c_emp * rep.m_emp, 7);
    sec.corollary_energy_bound =
        Rational(bigint_pow(BigInt(static_cast<unsigned long>(sec.s_size)), 3)) / denom;
    sec.corollary_energy_holds = sec.corollary_energy_bound <= Rational(sec.group_E);

    // Size profile first, then detection at the largest threshold in the
    // halving sequence that still catches a coset.
    CosetProfile profile = coset_size_profile(S);
    sec.tau_vertical_used =
        detail::resolve_tau(cfg.tau_vertical, sec.s_size, profile.max_vertical);
    sec.tau_torus_used = detail::resolve_tau(cfg.tau_torus, sec.s_size, profile.max_nonvertical);
    sec.detection.max_vertical = profile.max_vertical;
    sec.detection.max_nonvertical = profile.max_nonvertical;
    if (sec.tau_vertical_used >= 2) {
      sec.detection.vertical = detect_vertical(S, sec.tau_vertical_used);
    }
    if (sec.tau_torus_used >= 2) {
      sec.detection.torus = detect_torus_cosets(S, sec.tau_torus_used);
    }

    sec.vertical_branch = !sec.detection.vertical.empty();
    sec.torus_branch = !sec.detection.torus.empty();

    if (sec.vertical_branch) {
      sec.prop43.push_back(prop43_report(P, sec.detection.vertical.front(), S, k));
      if (!rep.lines) {
        rep.lines = parallel_line_cover(P, cfg.c3_line);
        rep.sigma = sigma_emp(rep.lines->top_occupancy, rep.n);
      }
      line_found = line_found || rep.lines->majority_covered;
    }
    if (sec.torus_branch) {
      sec.prop43.push_back(prop43_report(P, sec.detection.torus.front(), S, k));
      sec.circle = extract_circle(sec.detection.torus.front(), S, P);
      circle_found = true;
    }

    std::string suffix = "(k=" + std::to_string(k) + ")";
    add_check("large_group_energy" + suffix, fraction_str(sec.lemma31.lhs),
              sec.lemma31.energy.get_str(), sec.lemma31.holds);
    add_check("rich_set_size" + suffix, fraction_str(sec.corollary_size_threshold),
              std::to_string(sec.s_size), sec.corollary_size_holds);
    add_check("rich_set_energy" + suffix, fraction_str(sec.corollary_energy_bound),
              sec.group_E.get_str(), sec.corollary_energy_holds);
    add_check("star_energy_le_group_energy" + suffix, sec.star_E.get_str(),
              sec.group_E.get_str(), sec.shkredov_holds);
    for (const Prop43Report& pr : sec.prop43) {
      std::string branch = pr.vertical_branch ? "vertical" : "torus";
      add_check("coset_energy_chain_lower[" + branch + "]" + suffix, pr.lower.get_str(),
                pr.middle.get_str(), pr.lower_le_middle);
      if (pr.vertical_branch) {
        add_check("coset_energy_chain_upper[vertical]" + suffix, pr.middle.get_str(),
                  pr.upper.get_str(), pr.middle_le_upper);
        add_check("mixed_le_additive" + suffix, pr.middle.get_str(), rep.additive_E.get_str(),
                  pr.middle <= rep.additive_E);
      } else {
        add_check("coset_energy_chain_upper[torus]" + suffix,
                  BigInt(pr.middle * pr.middle).get_str(), pr.upper.get_str(),
                  pr.middle_le_upper);
      }
    }

    rep.sections.push_back(std::move(sec));
  }

  rep.verdict = detail::verdict_string(line_found, circle_found, !rep.good_ks.empty());
  return rep;
}

// ---- canonical JSON serialization -----------------------------------------

namespace detail {

inline Json spectrum_to_json(const std::vector<SpectrumEntry>& entries) {
  Json arr = Json::array();
  for (const SpectrumEntry& e : entries) arr.push_back(Json::array({e.k, e.count}));
  return arr;
}

inline Json affine_to_json(const AffineElement& g) {
  return Json{{"a", point_to_json(g.a)}, {"b", point_to_json(g.b)}};
}

inline Json vertical_coset_to_json(const VerticalCoset& c) {
  Json members = Json::array();
  for (const AffineElement& m : c.members) members.push_back(affine_to_json(m));
  return Json{{"a", point_to_json(c.a)}, {"size", c.members.size()}, {"members", members}};
}

inline Json torus_coset_to_json(const TorusCoset& c) {
  Json members = Json::array();
  for (const AffineElement& m : c.members) members.push_back(affine_to_json(m));
  return Json{{"z", point_to_json(c.z)},
              {"c", point_to_json(c.c)},
              {"size", c.members.size()},
              {"members", members}};
}

inline Json prop43_to_json(const Prop43Report& pr) {
  Json j{{"branch", pr.vertical_branch ? "vertical" : "torus"},
         {"coset_size", pr.coset_size},
         {"k", pr.k},
         {"member_representations_ok", pr.member_reps_ok},
         {"lower", pr.lower.get_str()},
         {"middle", pr.middle.get_str()},
         {"upper", pr.upper.get_str()},
         {"lower_le_middle", pr.lower_le_middle},
         {"middle_le_upper", pr.middle_le_upper},
         {"chain_holds", pr.chain_holds()}};
  if (pr.vertical_branch) {
    j["stated_cubed_lhs"] = fraction_str(pr.stated_cubed_lhs);
    j["stated_cubed_holds"] = pr.stated_cubed_holds;
  } else {
    j["mult_energy_shift_z"] = pr.mult_energy_shift_z.get_str();
    j["mult_energy_shift_gz"] = pr.mult_energy_shift_gz.get_str();
    j["zero_in_p_minus_z"] = pr.zero_in_p_minus_z;
    j["zero_in_p_minus_gz"] = pr.zero_in_p_minus_gz;
  }
  return j;
}

inline Json circle_to_json(const CircleExtraction& ce) {
  Json hits = Json::array();
  for (const GaussianRational& p : ce.hits) hits.push_back(point_to_json(p));
  return Json{{"center", point_to_json(ce.circle.center)},
              {"radius_sq", fraction_str(ce.circle.radius_sq)},
              {"pivot", point_to_json(ce.pivot)},
              {"pivot_out_degree", ce.pivot_out_degree},
              {"edge_count", ce.edge_count},
              {"hit_count", ce.hits.size()},
              {"hits", hits}};
}

inline Json lines_to_json(const LineFamily& lf) {
  Json lines = Json::array();
  for (const LineFamily::Line& l : lf.lines) {
    Json pts = Json::array();
    for (const GaussianRational& p : l.points) pts.push_back(point_to_json(p));
    lines.push_back(Json{{"offset", fraction_str(l.offset)},
                         {"size", l.points.size()},
                         {"points", pts}});
  }
  Json residual = Json::array();
  for (const GaussianRational& p : lf.residual) residual.push_back(point_to_json(p));
  return Json{{"direction", point_to_json(lf.direction)},
              {"lines", lines},
              {"line_count", lf.line_count()},
              {"top_occupancy", lf.top_occupancy},
              {"covered", lf.covered},
              {"residual", residual},
              {"residual_count", lf.residual.size()},
              {"majority_covered", lf.majority_covered}};
}

}  // namespace detail

inline Json report_to_json(const Report& rep) {
  Json checks = Json::array();
  for (const InequalityCheck& c : rep.checklist) {
    checks.push_back(Json{{"name", c.name},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"relation", c.relation},
                          {"holds", c.holds}});
  }
  Json sections = Json::array();
  for (const KSection& sec : rep.sections) {
    Json vertical = Json::array();
    for (const VerticalCoset& c : sec.detection.vertical) {
      vertical.push_back(detail::vertical_coset_to_json(c));
    }
    Json torus = Json::array();
    for (const TorusCoset& c : sec.detection.torus) {
      torus.push_back(detail::torus_coset_to_json(c));
    }
    Json props = Json::array();
    for (const Prop43Report& pr : sec.prop43) props.push_back(detail::prop43_to_json(pr));
    Json js{{"k", sec.k},
            {"s_size", sec.s_size},
            {"group_energy", sec.group_E.get_str()},
            {"star_energy", sec.star_E.get_str()},
            {"shkredov_holds", sec.shkredov_holds},
            {"lemma31_lhs", fraction_str(sec.lemma31.lhs)},
            {"lemma31_holds", sec.lemma31.holds},
            {"corollary_size_threshold", fraction_str(sec.corollary_size_threshold)},
            {"corollary_size_holds", sec.corollary_size_holds},
            {"corollary_energy_bound", fraction_str(sec.corollary_energy_bound)},
            {"corollary_energy_holds", sec.corollary_energy_holds},
            {"tau_vertical_used", sec.tau_vertical_used},
            {"tau_torus_used", sec.tau_torus_used},
            {"max_vertical_occupancy", sec.detection.max_vertical},
            {"max_nonvertical_occupancy", sec.detection.max_nonvertical},
            {"vertical_cosets", vertical},
            {"torus_cosets", torus},
            {"prop43", props},
            {"vertical_branch", sec.vertical_branch},
            {"torus_branch", sec.torus_branch}};
    if (sec.circle) js["circle"] = detail::circle_to_json(*sec.circle);
    sections.push_back(std::move(js));
  }

  Json doc{{"schema_version", kReportSchemaVersion},
           {"n", rep.n},
           {"triple_convention",
            rep.convention == TripleConvention::all_triples ? "all_P3" : "distinct_points"},
           {"class_count", rep.class_count},
           {"class_count_sorted_keys", rep.class_count_sorted_keys},
           {"total_triples", rep.total_triples},
           {"m_emp", fraction_str(rep.m_emp)},
           {"distinct_distances", rep.distinct_distances},
           {"triangle_energy", rep.triangle_E.get_str()},
           {"se2_triple_energy", rep.se2_te.get_str()},
           {"spectrum_weight_k2", rep.spectrum_weight_k2.get_str()},
           {"spectrum_exact", detail::spectrum_to_json(rep.spectrum_exact)},
           {"max_richness", rep.max_richness},
           {"c_emp", fraction_str(rep.c_emp)},
           {"good_ks", rep.good_ks},
           {"sections", sections},
           {"additive_energy", rep.additive_E.get_str()},
           {"sumset_size", rep.sumset},
           {"multiplicative_energy", rep.mult_E.get_str()},
           {"checklist", checks},
           {"verdict", rep.verdict},
           {"points", points_to_json(rep.points)["points"]}};
  if (rep.lines) {
    doc["line_family"] = detail::lines_to_json(*rep.lines);
    doc["sigma_emp"] = rep.sigma;
  }
  return doc;
}

}  // namespace congr
