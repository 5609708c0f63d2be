#include "tdlc/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tdlc/localstructure.hpp"
#include "tdlc/modular.hpp"
#include "tdlc/portrait.hpp"
#include "tdlc/propertyz.hpp"
#include "tdlc/qlattice.hpp"
#include "tdlc/scale.hpp"

namespace tdlc {

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool family_has_axis(ModelFamily f) {
  switch (f) {
    case ModelFamily::FullAut:
    case ModelFamily::EndStab:
    case ModelFamily::DirectedTree:
    case ModelFamily::RedBlueTree:
      return true;
    default:
      return false;
  }
}

// Scale samples from axis translations of length 1 (and the arc classes for
// oracles). Families without a canonical line contribute no samples.
std::vector<ScaleEstimate> sample_scales(const GroupModel& m, int window) {
  std::vector<ScaleEstimate> samples;
  if (family_has_axis(m.family())) {
    int steps = window + 1;
    auto R = m.realize(steps);
    TreeAutomorphism t = TreeAutomorphism::axis_translation(*R, 1);
    samples.push_back(scale_estimate(orbit_growth(m, t, steps, steps), window));
  } else if (m.family() == ModelFamily::FiniteOracle) {
    for (const Perm& g : m.finite_group()->generators()) {
      samples.push_back(
          scale_estimate(orbit_growth_oracle(m, g, window + 1), window));
    }
  }
  return samples;
}

}  // namespace

MdBoundsReport compute_md_bounds(const GroupModel& m, const RunConfig& cfg) {
  MdBoundsReport rep;
  rep.upper_bound = m.canonical_degree();

  // modular-function bound: min over generating families of the image
  {
    DegreeBound b{"modular-function", 0, false, ""};
    QPlusLattice H = modular_image(m);
    auto res = md_lower_bound_modular(H);
    if (H.is_trivial()) {
      b.value = 0;
      b.available = true;
      b.note = "modular image trivial: no information from this bound";
    } else if (res.exact) {
      b.value = static_cast<int>(res.value);
      b.available = true;
    } else {
      b.note = "search cap exceeded";
    }
    rep.lower_bounds.push_back(b);
  }

  // local simple content bound
  {
    DegreeBound b{"local-simple-content", 0, false, ""};
    try {
      auto content = local_simple_content(m, std::max(2, cfg.depth), cfg.order_bound);
      auto v = md_lower_bound_lsc(content);
      if (v) {
        b.value = *v;
        b.available = true;
      } else {
        b.note = "unidentified simple factor";
      }
      DegreeBound p{"local-prime-content", md_lower_bound_prime(content),
                    true, ""};
      rep.lower_bounds.push_back(b);
      rep.lower_bounds.push_back(p);
    } catch (const std::runtime_error& e) {
      b.note = e.what();
      rep.lower_bounds.push_back(b);
      rep.lower_bounds.push_back({"local-prime-content", 0, false, e.what()});
    }
  }

  // scale bound
  {
    DegreeBound b{"scale-function", 0, false, ""};
    try {
      auto samples = sample_scales(m, cfg.scale_window);
      if (!samples.empty()) {
        b.value = static_cast<int>(md_lower_bound_scale(samples));
        b.available = true;
        if (b.value == 0) b.note = "all sampled scales are 1: no information";
      } else {
        b.note = "no translation samples for this family";
      }
    } catch (const std::exception& e) {
      b.note = e.what();
    }
    rep.lower_bounds.push_back(b);
  }

  for (const auto& b : rep.lower_bounds) {
    if (b.available) rep.best_lower = std::max(rep.best_lower, b.value);
  }
  if (rep.best_lower == rep.upper_bound) rep.verdict = rep.upper_bound;

  // known value kept as reference metadata where the bounds cannot meet
  if (m.family() == ModelFamily::FullAut && m.param1() == 5) {
    rep.reference_value = 5;
  }
  return rep;
}

BallGraph cached_canonical_ball(const GroupModel& m, int radius,
                                const std::string& cache_dir) {
  if (cache_dir.empty()) return m.canonical_cayley_abels(radius);

  std::string spec = model_to_json(m);
  std::ostringstream name;
  name << "ball_" << std::hex << fnv1a(spec) << "_r" << std::dec << radius
       << ".json";
  std::filesystem::path path = std::filesystem::path(cache_dir) / name.str();

  if (std::filesystem::exists(path)) {
    try {
      std::ifstream in(path);
      std::stringstream buf;
      buf << in.rdbuf();
      auto doc = nlohmann::json::parse(buf.str());
      if (doc.at("model") == nlohmann::json::parse(spec) &&
          doc.at("radius").get<int>() == radius) {
        std::string ball_text = doc.at("ball").dump();
        if (fnv1a(ball_text) == doc.at("hash").get<std::uint64_t>()) {
          return ball_from_json(ball_text);
        }
      }
    } catch (...) {
      // fall through: corrupt or stale entries are rebuilt
    }
  }

  BallGraph ball = m.canonical_cayley_abels(radius);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  ordered_json doc;
  doc["model"] = nlohmann::json::parse(spec);
  doc["radius"] = radius;
  std::string ball_text = ball_to_json(ball);
  doc["ball"] = nlohmann::json::parse(ball_text);
  doc["hash"] = fnv1a(doc.at("ball").dump());
  std::ofstream out(path);
  out << doc.dump();
  return ball;
}

namespace {

ordered_json bounds_to_json(const MdBoundsReport& rep) {
  ordered_json out;
  auto arr = ordered_json::array();
  for (const auto& b : rep.lower_bounds) {
    ordered_json jb;
    jb["method"] = b.method;
    jb["available"] = b.available;
    jb["value"] = b.value;
    if (!b.note.empty()) jb["note"] = b.note;
    arr.push_back(jb);
  }
  out["lower_bounds"] = arr;
  out["best_lower"] = rep.best_lower;
  out["upper_bound"] = rep.upper_bound;
  if (rep.verdict) {
    out["verdict"] = *rep.verdict;
  } else {
    out["verdict"] = nullptr;
  }
  if (rep.reference_value) out["reference_value"] = *rep.reference_value;
  return out;
}

std::string bounds_to_text(const GroupModel& m, const MdBoundsReport& rep) {
  std::ostringstream out;
  out << "minimal degree bounds for " << m.name() << "\n";
  for (const auto& b : rep.lower_bounds) {
    out << "  lower (" << b.method << "): ";
    if (b.available) {
      out << b.value;
    } else {
      out << "n/a";
    }
    if (!b.note.empty()) out << "  [" << b.note << "]";
    out << "\n";
  }
  out << "  upper (canonical-graph degree): " << rep.upper_bound << "\n";
  out << "  best lower: " << rep.best_lower << "\n";
  if (rep.verdict) {
    out << "  verdict: md = " << *rep.verdict << "\n";
  } else {
    out << "  verdict: md in [" << rep.best_lower << ", " << rep.upper_bound << "]";
    if (rep.reference_value) {
      out << "  (known value " << *rep.reference_value << ", reference metadata)";
    }
    out << "\n";
  }
  return out.str();
}

ordered_json run_command(const GroupModel& m, const RunConfig& cfg,
                         const std::string& command, std::string& text) {
  ordered_json results;
  std::ostringstream out;

  if (command == "md-bounds") {
    auto rep = compute_md_bounds(m, cfg);
    results = bounds_to_json(rep);
    out << bounds_to_text(m, rep);
  } else if (command == "modular") {
    ArcLabelling labels = arc_labelling(m, cfg.radius);
    int checked = verify_labelling_invariance(m, labels, 64);
    QPlusLattice H = modular_image(m);
    auto minA = md_lower_bound_modular(H);
    auto arr = ordered_json::array();
    const auto& classes = labels.domain->arc_classes;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      ordered_json jc;
      jc["class"] = classes[i].name;
      jc["label"] = labels.class_labels[i].to_string();
      arr.push_back(jc);
    }
    results["arc_labels"] = arr;
    results["image"] = H.to_string();
    results["rank"] = H.rank();
    results["invariance_samples_checked"] = checked;
    results["min_generating_cost"] = minA.value;
    results["min_generating_cost_exact"] = minA.exact;
    if (H.is_trivial()) {
      results["note"] = "trivial image: degree bound carries no information";
    }
    out << "modular arc labels for " << m.name() << "\n";
    for (const auto& jc : arr) {
      out << "  " << jc["class"].get<std::string>() << ": "
          << jc["label"].get<std::string>() << "\n";
    }
    out << "  image: " << H.to_string() << " (rank " << H.rank() << ")\n";
    out << "  min generating cost: " << minA.value
        << (minA.exact ? "" : " (cap reached)") << "\n";
  } else if (command == "scale") {
    int steps = cfg.scale_window + 1;
    int radius = std::max(cfg.radius, steps * cfg.scale_length);
    auto R = m.realize(radius);
    auto arr = ordered_json::array();
    if (family_has_axis(m.family())) {
      TreeAutomorphism t =
          TreeAutomorphism::axis_translation(*R, cfg.scale_length);
      auto growth = orbit_growth(m, t, steps, radius);
      auto est = scale_estimate(growth, cfg.scale_window);
      ordered_json js;
      js["translation_length"] = cfg.scale_length;
      js["orbit_sizes"] = growth.sizes;
      js["scale"] = est.value;
      js["converged"] = est.converged;
      arr.push_back(js);
      out << "scale along translation of length " << cfg.scale_length << ": "
          << est.value << (est.converged ? "" : " (not converged)") << "\n";
    }
    results["translations"] = arr;
    auto certs = ordered_json::array();
    for (std::size_t c = 0; c < R->arc_classes.size(); ++c) {
      auto cert = tidy_coprime_certificate(m, std::min(radius, 2), static_cast<int>(c));
      ordered_json jc;
      jc["arc_class"] = R->arc_classes[c].name;
      jc["p"] = cert.p;
      jc["q"] = cert.q;
      jc["coprime"] = cert.coprime;
      if (cert.coprime) jc["scale"] = cert.scale;
      certs.push_back(jc);
      out << "  arc class " << R->arc_classes[c].name << ": indices (" << cert.p
          << ", " << cert.q << ")"
          << (cert.coprime ? " coprime, tidy, scale " + std::to_string(cert.scale)
                           : " not coprime")
          << "\n";
    }
    results["tidy_certificates"] = certs;
  } else if (command == "lsc") {
    auto content = local_simple_content(m, std::max(2, cfg.depth), cfg.order_bound);
    auto arr = ordered_json::array();
    for (const auto& fm : content.step_factors) arr.push_back(to_string(fm));
    results["step_factors"] = arr;
    auto stable = ordered_json::array();
    for (const auto& id : content.stable_factors) stable.push_back(id.name());
    results["stable_factors"] = stable;
    auto primes = ordered_json::array();
    for (auto p : content.primes) primes.push_back(p);
    results["primes"] = primes;
    results["depth"] = content.depth;
    auto lsc = md_lower_bound_lsc(content);
    if (lsc) {
      results["md_lower_bound"] = *lsc;
    } else {
      results["md_lower_bound"] = nullptr;
    }
    results["md_lower_bound_prime"] = md_lower_bound_prime(content);
    out << "local simple content of " << m.name() << " at depth "
        << content.depth << "\n  stable factors:";
    for (const auto& id : content.stable_factors) out << " " << id.name();
    out << "\n  degree bound: " << (lsc ? std::to_string(*lsc) : "unknown")
        << ", prime bound: " << md_lower_bound_prime(content) << "\n";
  } else if (command == "propertyz") {
    ZMorphism zm = z_morphism(m, cfg.radius);
    auto ball = m.realize_structure(cfg.radius)->ball;
    auto checks = verify_z_morphism(zm, ball);
    results["rank"] = zm.target_rank;
    results["is_morphism"] = checks.is_morphism;
    results["collapse_is_morphism"] = checks.collapse_is_morphism;
    results["bipartite"] = checks.bipartite;
    std::vector<long long> zero(zm.target_rank, 0);
    auto fib = ordered_json::array();
    for (int r = 1; r <= cfg.radius; ++r) {
      fib.push_back(fibre_size_within(zm, ball, zero, r));
    }
    results["base_fibre_by_radius"] = fib;
    auto ft = arc_fibre_transitivity_check(
        m, std::min(cfg.radius, cfg.arc_word_length + 1), cfg.arc_word_length);
    results["coprime_hypothesis"] = ft.coprime_hypothesis;
    auto fr = ordered_json::array();
    for (const auto& f : ft.fibres) {
      ordered_json jf;
      jf["word"] = f.word;
      jf["arc_count"] = f.arc_count;
      jf["orbit_count"] = f.orbit_count;
      fr.push_back(jf);
    }
    results["arc_fibres"] = fr;
    out << "directed-lattice morphism for " << m.name() << " (rank "
        << zm.target_rank << ")\n  morphism " << checks.is_morphism
        << ", collapse " << checks.collapse_is_morphism << ", bipartite "
        << checks.bipartite << "\n  base fibre by radius:";
    for (const auto& v : fib) out << " " << v;
    out << "\n";
  } else if (command == "quotient") {
    if (m.family() == ModelFamily::ProductWithFinite) {
      auto R = m.realize(cfg.radius);
      int mfv = R->fibre_size;
      QuotientMap q;
      q.class_count = R->product_base_vertices;
      q.class_of.resize(R->ball.graph.vertex_count());
      for (int v = 0; v < R->ball.graph.vertex_count(); ++v) {
        q.class_of[v] = v / mfv;
      }
      auto check = quotient_degree_check(R->ball.graph, q);
      results["degree_before"] = check.degree_before;
      results["degree_after"] = check.degree_after;
      results["equal"] = check.degree_before == check.degree_after;
      if (check.witness) {
        results["witness"] = {check.witness->first, check.witness->second};
      }
      out << "quotient by the compact normal factor: degree "
          << check.degree_before << " -> " << check.degree_after << "\n";
    } else {
      throw std::invalid_argument(
          "quotient command expects a product_finite spec");
    }
  } else {
    throw std::invalid_argument("unknown command: " + command);
  }

  text = out.str();
  return results;
}

}  // namespace

ReportResult run_report(const RunConfig& cfg, const std::string& command) {
  ReportResult result;
  try {
    GroupModel m = model_from_json(cfg.spec_text);
    if (!cfg.cache_dir.empty()) {
      cached_canonical_ball(m, cfg.radius, cfg.cache_dir);
    }
    std::string text;
    ordered_json results = run_command(m, cfg, command, text);

    ordered_json doc;
    doc["command"] = command;
    doc["model"] = nlohmann::json::parse(model_to_json(m));
    ordered_json jc;
    jc["radius"] = cfg.radius;
    jc["depth"] = cfg.depth;
    jc["order_bound"] = cfg.order_bound;
    jc["scale_window"] = cfg.scale_window;
    doc["config"] = jc;
    doc["results"] = results;
    result.json = doc.dump(2);
    result.text = text;
  } catch (const nlohmann::json::exception& e) {
    result.exit_code = 2;
    result.text = std::string("invalid input: ") + e.what();
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.text = std::string("invalid input: ") + e.what();
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.text = std::string("computation error: ") + e.what();
  }
  return result;
}

}  // namespace tdlc
