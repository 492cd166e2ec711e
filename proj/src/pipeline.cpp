#include "gsc/pipeline.hpp"

#include "gsc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace gsc {

namespace {

// ---- JSON helpers ---------------------------------------------------------

Json int_json(const Int& v) {
  static const Int lo = Int(std::numeric_limits<long long>::min());
  static const Int hi = Int(std::numeric_limits<long long>::max());
  if (v >= lo && v <= hi) return v.convert_to<long long>();
  return v.str(); // arbitrary-precision values degrade to strings
}

Json int_vec_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(int_json(x));
  return out;
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Json combined_weight_json(const CombinedWeight& w) {
  if (w.finite.empty()) return w.torus;
  Json out;
  out["torus"] = w.torus;
  out["finite"] = w.finite;
  return out;
}

Json term_json(const Term& t) {
  Json out;
  out["vertex"] = t.vertex;
  out["shift"] = t.shift;
  out["gamma"] = t.gamma;
  return out;
}

Json complex_json(const ProjComplex& cx) {
  Json slots = Json::array();
  for (const auto& slot : cx.slots) {
    Json sj = Json::array();
    for (const Term& t : slot) sj.push_back(term_json(t));
    slots.push_back(std::move(sj));
  }
  Json diffs = Json::array();
  for (const auto& diff : cx.diffs) {
    Json dj = Json::array();
    for (const Entry& en : diff) {
      Json ej;
      ej["row"] = en.row;
      ej["col"] = en.col;
      ej["coef"] = rat_str(en.coef);
      dj.push_back(std::move(ej));
    }
    diffs.push_back(std::move(dj));
  }
  Json out;
  out["lo"] = cx.lo;
  out["slots"] = std::move(slots);
  out["diffs"] = std::move(diffs);
  return out;
}

// Multiplicity-aggregated Betti data, one row per cohomological position.
Json betti_json(const ProjComplex& cx) {
  const auto table = betti_table(cx);
  Json out = Json::array();
  for (size_t s = 0; s < table.size(); ++s) {
    std::map<std::pair<int, int>, int> mult;
    for (const auto& vs : table[s]) ++mult[vs];
    Json terms = Json::array();
    for (const auto& [vs, count] : mult) {
      Json tj;
      tj["vertex"] = vs.first;
      tj["shift"] = vs.second;
      tj["count"] = count;
      terms.push_back(std::move(tj));
    }
    Json row;
    row["position"] = cx.lo + static_cast<int>(s);
    row["terms"] = std::move(terms);
    out.push_back(std::move(row));
  }
  return out;
}

// ---- task registry and config normalization -------------------------------

struct TaskDef {
  const char* name;
  std::vector<const char*> deps;
};

const std::vector<TaskDef>& task_defs() {
  static const std::vector<TaskDef> defs = {
      {"checks", {}},
      {"nccr", {}},
      {"presentation", {"nccr"}},
      {"resolution", {"nccr"}},
      {"tilting", {"nccr", "resolution"}},
      {"end", {"nccr", "resolution", "tilting"}},
  };
  return defs;
}

// Expands a requested task list by its dependencies and sorts it into the
// canonical execution order; empty or "all" selects everything.
std::vector<std::string> expand_tasks(const std::vector<std::string>& requested) {
  const auto& defs = task_defs();
  std::map<std::string, const TaskDef*> by_name;
  for (const auto& d : defs) by_name[d.name] = &d;

  std::map<std::string, bool> selected;
  bool all = requested.empty();
  for (const auto& r : requested)
    if (r == "all") all = true;
  if (all) {
    for (const auto& d : defs) selected[d.name] = true;
  } else {
    for (const auto& r : requested) {
      if (!by_name.count(r)) throw ValidationError("unknown task '" + r + "'");
      selected[r] = true;
    }
    // transitive dependency closure (the def list is already topologically
    // sorted, so one right-to-left sweep suffices)
    for (auto it = defs.rbegin(); it != defs.rend(); ++it)
      if (selected.count(it->name))
        for (const char* dep : it->deps) selected[dep] = true;
  }
  std::vector<std::string> out;
  for (const auto& d : defs)
    if (selected.count(d.name)) out.push_back(d.name);
  return out;
}

int status_severity(const std::string& status) {
  if (status == "pass") return kExitPass;
  if (status == "validation_error") return kExitValidation;
  if (status == "unstable" || status == "instability" || status == "undecided")
    return kExitInstability;
  return kExitInternal;
}

// ---- memoized shared computations ------------------------------------------

// Heavy artifacts are computed once per truncation window and shared across
// tasks; a failure is remembered as the original exception so every dependent
// task reports the same diagnostic without redoing the work.
template <typename T> struct Memo {
  std::optional<T> value;
  std::exception_ptr error;

  template <typename F> const T& get(F&& build) {
    if (error) std::rethrow_exception(error);
    if (!value) {
      try {
        value = build();
      } catch (...) {
        error = std::current_exception();
        throw;
      }
    }
    return *value;
  }
};

struct Ctx {
  GroupSpec g;
  int D = 0;
  WindowConvention conv = WindowConvention::OpenLowClosedHigh;

  Memo<NCCRAlgebra> model_[2];
  Memo<Resolution> res_[2];
  Memo<TiltingObject> tilt_[2];
  Memo<EndReport> end_[2];

  int trunc(bool second) const { return second ? D + 2 : D; }

  const NCCRAlgebra& model(bool second) {
    return model_[second].get([&] { return monomial_model(g, trunc(second), conv); });
  }
  const Resolution& resolution(bool second) {
    return res_[second].get([&] { return resolve_complement_simples(model(second)); });
  }
  const TiltingObject& tilting(bool second) {
    return tilt_[second].get([&] { return build_tilting_object(model(second)); });
  }
  const EndReport& endreport(bool second) {
    return end_[second].get([&] { return endomorphism_algebra(model(second), tilting(second)); });
  }
};

// ---- task bodies -----------------------------------------------------------

Json gorenstein_json(const GorensteinReport& r, int truncation) {
  Json out;
  out["truncation"] = truncation;
  out["conclusive"] = r.conclusive;
  out["terminates"] = r.terminates;
  out["palindromic"] = r.palindromic;
  out["numerator_degree"] = r.numerator_degree;
  out["sign"] = r.sign;
  out["parameter"] = r.parameter;
  out["pass"] = r.pass;
  out["numerator"] = int_vec_json(r.numerator);
  return out;
}

void checks_task(Ctx& ctx, Json& out) {
  const GroupSpec& g = ctx.g;
  const auto eff = check_effectiveness(g);
  {
    Json ej;
    ej["two_sided"] = eff.two_sided;
    ej["sum_zero"] = eff.sum_zero;
    ej["pairwise_gcd"] = eff.pairwise_gcd;
    Json fails = Json::array();
    for (const auto& [i, j] : eff.gcd_failures) fails.push_back(Json::array({i, j}));
    ej["gcd_failures"] = std::move(fails);
    ej["effective"] = eff.effective();
    out["effectiveness"] = std::move(ej);
  }
  const bool qs = is_quasi_symmetric(g);
  out["quasi_symmetric"] = qs;
  out["unimodular"] = is_unimodular(g);
  out["generic"] = is_generic(g);
  if (qs) {
    out["positive_weight_sum"] = positive_weight_sum(g);
    out["window"] = character_window(g, ctx.conv);
  }

  const auto hb = invariant_hilbert_basis(g);
  std::vector<int> degrees;
  {
    Json elems = Json::array();
    for (const auto& m : hb) {
      int deg = 0;
      for (int e : m.exponents) deg += e;
      degrees.push_back(deg);
      elems.push_back(m.exponents);
    }
    Json hj;
    hj["count"] = hb.size();
    hj["degrees"] = degrees;
    hj["elements"] = std::move(elems);
    out["hilbert_basis"] = std::move(hj);
  }

  const auto gor1 = gorenstein_symmetry_check(invariant_series(g, ctx.D), degrees, g.n);
  const auto gor2 = gorenstein_symmetry_check(invariant_series(g, ctx.D + 2), degrees, g.n);
  out["gorenstein"] = gorenstein_json(gor1, ctx.D);
  const bool stable = gor1.conclusive == gor2.conclusive && gor1.terminates == gor2.terminates &&
                      gor1.palindromic == gor2.palindromic && gor1.parameter == gor2.parameter &&
                      gor1.pass == gor2.pass;
  {
    Json st;
    st["retruncation"] = ctx.D + 2;
    st["stable"] = stable;
    out["stability"] = std::move(st);
  }

  if (!eff.effective()) {
    std::string msg;
    auto add = [&msg](const std::string& part) {
      if (!msg.empty()) msg += "; ";
      msg += part;
    };
    if (!eff.two_sided)
      add("effectiveness condition (1): fewer than two strictly positive or two strictly "
          "negative weights");
    if (!eff.sum_zero) add("effectiveness condition (2): weights do not sum to zero");
    if (!eff.pairwise_gcd) {
      std::string part = "effectiveness condition (3): mixed-sign weight pairs with gcd > 1:";
      for (const auto& [i, j] : eff.gcd_failures)
        part += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
      add(part);
    }
    out["status"] = "validation_error";
    Json err;
    err["type"] = "validation";
    err["message"] = msg;
    out["error"] = std::move(err);
  } else if (!stable) {
    out["status"] = "unstable";
  }
}

// First index after which the vector is identically zero; nullopt when the
// last entry is still nonzero.
std::optional<int> vanishes_from(const std::vector<Int>& dims) {
  size_t k = dims.size();
  while (k > 0 && dims[k - 1] == 0) --k;
  if (k == dims.size() && !dims.empty()) return std::nullopt;
  return static_cast<int>(k);
}

void nccr_task(Ctx& ctx, Json& out) {
  const NCCRAlgebra& alg = ctx.model(false);
  out["truncation"] = ctx.D;
  {
    Json vj = Json::array();
    for (const auto& v : alg.vertices) vj.push_back(combined_weight_json(v));
    out["vertices"] = std::move(vj);
  }
  out["vertex_count"] = alg.vertices.size();
  out["distinguished"] = alg.distinguished;
  {
    Json gd = Json::array();
    for (int d = 0; d <= std::min(ctx.D - 2, 8); ++d) gd.push_back(int_json(alg.graded_dim(d)));
    out["graded_dims"] = std::move(gd);
  }
  const auto q1 = quotient_dims_by_idempotent(alg, ctx.D);
  const auto v1 = vanishes_from(q1);
  {
    Json qj;
    qj["dims"] = int_vec_json(q1);
    qj["eventually_zero"] = v1.has_value();
    qj["vanishes_from"] = v1 ? Json(*v1) : Json(nullptr);
    out["quotient"] = std::move(qj);
  }
  out["associative_to_degree_4"] = verify_associativity(alg, std::min(4, ctx.D - 2));

  const NCCRAlgebra& alg2 = ctx.model(true);
  const auto q2 = quotient_dims_by_idempotent(alg2, ctx.D + 2);
  const auto v2 = vanishes_from(q2);
  const bool stable = alg2.vertices == alg.vertices &&
                      std::equal(q1.begin(), q1.end(), q2.begin()) &&
                      v1.has_value() == v2.has_value() && (!v1 || *v1 == *v2);
  {
    Json st;
    st["retruncation"] = ctx.D + 2;
    st["stable"] = stable;
    out["stability"] = std::move(st);
  }
  if (check_effectiveness(ctx.g).effective() && !v1.has_value()) {
    // effective weights must have a finite-dimensional quotient, so positive
    // dimensions at the window boundary mean the window is too small
    out["status"] = "instability";
    Json err;
    err["type"] = "instability";
    err["message"] = "quotient dimensions still positive at the truncation boundary";
    out["error"] = std::move(err);
  } else if (!stable) {
    out["status"] = "unstable";
  }
}

Json presentation_json(const QuiverPresentation& pres) {
  Json out;
  {
    Json aj = Json::array();
    for (const auto& a : pres.arrows) {
      Json one;
      one["source"] = a.source;
      one["target"] = a.target;
      one["degree"] = a.degree;
      one["label"] = a.label.exponents;
      aj.push_back(std::move(one));
    }
    out["arrows"] = std::move(aj);
    out["arrow_count"] = pres.arrows.size();
  }
  {
    Json rj = Json::array();
    for (const auto& r : pres.relations) {
      Json one;
      one["source"] = r.source;
      one["target"] = r.target;
      one["degree"] = r.degree;
      Json terms = Json::array();
      for (const auto& [coef, word] : r.terms) {
        Json tj;
        tj["coef"] = rat_str(coef);
        tj["word"] = word;
        terms.push_back(std::move(tj));
      }
      one["terms"] = std::move(terms);
      rj.push_back(std::move(one));
    }
    out["relations"] = std::move(rj);
    out["relation_count"] = pres.relations.size();
    Json rd;
    for (const auto& [deg, dim] : pres.relation_dims) rd[std::to_string(deg)] = dim;
    out["relation_dims"] = std::move(rd);
  }
  return out;
}

void presentation_task(Ctx& ctx, Json& out) {
  const int bound = std::min(ctx.D - 2, 3);
  out["truncation"] = ctx.D;
  out["degree_bound"] = bound;
  const Json p1 = presentation_json(extract_presentation(ctx.model(false), bound));
  for (const auto& [k, v] : p1.items()) out[k] = v;
  const Json p2 = presentation_json(extract_presentation(ctx.model(true), bound));
  const bool stable = p1 == p2;
  Json st;
  st["retruncation"] = ctx.D + 2;
  st["stable"] = stable;
  out["stability"] = std::move(st);
  if (!stable) out["status"] = "unstable";
}

void resolution_task(Ctx& ctx, Json& out) {
  const Resolution& res = ctx.resolution(false);
  out["truncation"] = ctx.D;
  out["length"] = res.length;
  out["terminated"] = res.terminated;
  out["betti"] = betti_json(res.complex);
  out["shift_shape"] = Json(shift_shape_flags(res));
  const Resolution& res2 = ctx.resolution(true);
  const bool stable =
      res2.length == res.length && res2.terminated == res.terminated &&
      betti_json(res2.complex) == out["betti"];
  Json st;
  st["retruncation"] = ctx.D + 2;
  st["stable"] = stable;
  out["stability"] = std::move(st);
  if (!res.terminated) {
    out["status"] = "instability";
    Json err;
    err["type"] = "instability";
    err["message"] = "resolution did not terminate inside the truncation window";
    out["error"] = std::move(err);
  } else if (!stable) {
    out["status"] = "unstable";
  }
}

Json approx_json(const LeftApproximation& a) {
  Json out;
  Json gens = Json::array();
  for (const auto& gen : a.generators) {
    Json gj;
    gj["tau"] = gen.tau;
    gj["degree"] = gen.degree;
    Json vals = Json::array();
    for (const auto& [j, coef] : gen.values) {
      Json vj;
      vj["generator"] = j;
      vj["coef"] = rat_str(coef);
      vals.push_back(std::move(vj));
    }
    gj["values"] = std::move(vals);
    gens.push_back(std::move(gj));
  }
  out["generators"] = std::move(gens);
  Json fts = Json::array();
  for (const Term& t : a.f_terms) fts.push_back(term_json(t));
  out["target_terms"] = std::move(fts);
  out["factors_through"] = a.factors_through;
  out["generators_minimal"] = a.generators_minimal;
  out["window_degree"] = a.window_degree;
  return out;
}

Json tail_json(const TailIdentification& tail) {
  Json out;
  out["cut_equal"] = tail.cut_equal;
  out["cokernel_concentrated"] = tail.cokernel_concentrated;
  out["cokernel_dim"] = int_json(tail.cokernel_dim);
  out["window"] = Json::array({tail.window_lo, tail.window_hi});
  return out;
}

void tilting_task(Ctx& ctx, Json& out) {
  const TiltingObject& t = ctx.tilting(false);
  const int n = ctx.g.n;
  out["truncation"] = ctx.D;
  out["component_count"] = t.components.size();
  {
    Json cj = Json::array();
    for (const auto& comp : t.components) {
      Json one;
      one["index"] = comp.index;
      one["raw"] = complex_json(comp.lambda_level);
      one["normalized"] = complex_json(comp.normalized);
      if (comp.index >= 1) one["approximation"] = approx_json(comp.approx);
      cj.push_back(std::move(one));
    }
    out["components"] = std::move(cj);
  }
  out["tail_identification"] = tail_json(t.tail);

  const auto ext = verify_ext_vanishing(ctx.model(false), t, -(n - 1), n - 1);
  bool vanishing = true;
  {
    Json ej = Json::array();
    for (size_t k = 0; k < ext.size(); ++k) {
      const int r = -(n - 1) + static_cast<int>(k);
      Json row;
      row["r"] = r;
      row["dim"] = int_json(ext[k]);
      ej.push_back(std::move(row));
      if (r != 0 && ext[k] != 0) vanishing = false;
    }
    out["ext_table"] = std::move(ej);
  }
  out["ext_vanishing"] = vanishing;

  // Certificate: the same shifts measured on the lifted complexes in the
  // homotopy category. Off r = 0 these must vanish as well; at r = 0 the
  // entry may exceed the stable dimension by maps through free corner
  // summands.
  const auto extc = verify_ext_vanishing_complexes(ctx.model(false), t, -(n - 1), n - 1);
  bool complexes_vanishing = true;
  {
    Json ej = Json::array();
    for (size_t k = 0; k < extc.size(); ++k) {
      const int r = -(n - 1) + static_cast<int>(k);
      Json row;
      row["r"] = r;
      row["dim"] = int_json(extc[k]);
      ej.push_back(std::move(row));
      if (r != 0 && extc[k] != 0) complexes_vanishing = false;
    }
    out["ext_table_complexes"] = std::move(ej);
  }
  out["ext_vanishing_complexes"] = complexes_vanishing;

  bool conditions = true;
  for (const auto& comp : t.components)
    if (comp.index >= 1 && !(comp.approx.factors_through && comp.approx.generators_minimal))
      conditions = false;
  out["approximation_conditions"] = conditions;

  const TiltingObject& t2 = ctx.tilting(true);
  const auto ext2 = verify_ext_vanishing(ctx.model(true), t2, -(n - 1), n - 1);
  bool shapes_equal = t2.components.size() == t.components.size();
  for (size_t k = 0; shapes_equal && k < t.components.size(); ++k)
    shapes_equal = betti_json(t2.components[k].normalized) == betti_json(t.components[k].normalized);
  const bool tail_equal = t2.tail.cut_equal == t.tail.cut_equal &&
                          t2.tail.cokernel_concentrated == t.tail.cokernel_concentrated &&
                          t2.tail.cokernel_dim == t.tail.cokernel_dim;
  const bool stable = ext2 == ext && shapes_equal && tail_equal;
  {
    Json st;
    st["retruncation"] = ctx.D + 2;
    st["stable"] = stable;
    out["stability"] = std::move(st);
  }

  if (!vanishing || !complexes_vanishing || !t.tail.cut_equal || !t.tail.cokernel_concentrated ||
      !conditions) {
    out["status"] = "internal_error";
    Json err;
    err["type"] = "internal";
    err["message"] = "tilting certificates failed on validated input";
    out["error"] = std::move(err);
  } else if (!stable) {
    out["status"] = "unstable";
  }
}

void end_task(Ctx& ctx, Json& out) {
  const EndReport& rep = ctx.endreport(false);
  const int n = ctx.g.n;
  out["truncation"] = ctx.D;
  out["dimension"] = int_json(rep.dimension);
  {
    Json bj = Json::array();
    for (const auto& row : rep.component_dims) bj.push_back(int_vec_json(row));
    out["blocks"] = std::move(bj);
  }
  out["associative"] = rep.associative;
  out["unital"] = rep.unital;
  out["summands"] = rep.summands;
  out["summand_lower_bound"] = rep.summand_lower_bound;
  {
    // Stable basis maps: generator-to-generator coefficients within one
    // multidegree shift class.
    Json basis = Json::array();
    for (const auto& bm : rep.stable.basis) {
      Json mj;
      mj["src"] = bm.src;
      mj["dst"] = bm.dst;
      mj["delta"] = bm.map.delta;
      Json terms = Json::array();
      for (const auto& [from, to, coef] : bm.map.coords) {
        Json tj;
        tj["from"] = from;
        tj["to"] = to;
        tj["coef"] = rat_str(coef);
        terms.push_back(std::move(tj));
      }
      mj["terms"] = std::move(terms);
      basis.push_back(std::move(mj));
    }
    out["basis"] = std::move(basis);
    Json idc = Json::array();
    for (const Rat& c : rep.stable.identity) idc.push_back(rat_str(c));
    out["identity"] = std::move(idc);
    Json table = Json::array();
    for (const auto& row : rep.stable.table) {
      Json rj = Json::array();
      for (const Vec& coords : row) {
        Json cj = Json::array();
        for (const Rat& c : coords) cj.push_back(rat_str(c));
        rj.push_back(std::move(cj));
      }
      table.push_back(std::move(rj));
    }
    out["structure_constants"] = std::move(table);
  }
  {
    // Certificate: dimensions of the homotopy-category endomorphisms of the
    // lifted complexes, total and per ordered component pair.
    Json cx;
    cx["dimension"] = int_json(rep.complex_dimension);
    Json bj = Json::array();
    for (const auto& row : rep.complex_component_dims) bj.push_back(int_vec_json(row));
    cx["blocks"] = std::move(bj);
    out["complexes"] = std::move(cx);
  }

  const EndReport& rep2 = ctx.endreport(true);
  const bool stable = rep2.dimension == rep.dimension &&
                      rep2.component_dims == rep.component_dims &&
                      rep2.summands == rep.summands &&
                      rep2.complex_dimension == rep.complex_dimension;
  {
    Json st;
    st["retruncation"] = ctx.D + 2;
    st["stable"] = stable;
    out["stability"] = std::move(st);
  }

  const bool summands_ok =
      rep.summands >= n || (rep.summands < 0 && rep.summand_lower_bound >= n);
  if (!rep.associative || !rep.unital || (rep.summands >= 0 && rep.summands < n)) {
    out["status"] = "internal_error";
    Json err;
    err["type"] = "internal";
    err["message"] = "endomorphism algebra failed a structural check";
    out["error"] = std::move(err);
  } else if (!summands_ok) {
    out["status"] = "undecided";
    Json err;
    err["type"] = "undecided";
    err["message"] = "idempotent splitting could not certify the summand count";
    out["error"] = std::move(err);
  } else if (!stable) {
    out["status"] = "unstable";
  }
}

void run_one(Ctx& ctx, const std::string& name, Json& tasks_json, int& max_sev, bool& all_pass) {
  Json out;
  out["status"] = "pass";
  try {
    if (name == "checks")
      checks_task(ctx, out);
    else if (name == "nccr")
      nccr_task(ctx, out);
    else if (name == "presentation")
      presentation_task(ctx, out);
    else if (name == "resolution")
      resolution_task(ctx, out);
    else if (name == "tilting")
      tilting_task(ctx, out);
    else if (name == "end")
      end_task(ctx, out);
    else
      throw InternalError("unregistered task '" + name + "'");
  } catch (const ValidationError& ex) {
    out["status"] = "validation_error";
    Json err;
    err["type"] = "validation";
    err["message"] = ex.what();
    out["error"] = std::move(err);
  } catch (const InstabilityError& ex) {
    out["status"] = "instability";
    Json err;
    err["type"] = "instability";
    err["message"] = ex.what();
    out["error"] = std::move(err);
  } catch (const InternalError& ex) {
    out["status"] = "internal_error";
    Json err;
    err["type"] = "internal";
    err["message"] = ex.what();
    out["error"] = std::move(err);
  } catch (const std::exception& ex) {
    out["status"] = "internal_error";
    Json err;
    err["type"] = "internal";
    err["message"] = ex.what();
    out["error"] = std::move(err);
  }
  const std::string status = out["status"].get<std::string>();
  if (status != "pass") {
    all_pass = false;
    max_sev = std::max(max_sev, status_severity(status));
  }
  tasks_json[name] = std::move(out);
}

std::string convention_name(WindowConvention conv) {
  return conv == WindowConvention::OpenLowClosedHigh ? "open-low-closed-high"
                                                     : "closed-low-open-high";
}

} // namespace

const std::vector<std::string>& pipeline_task_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : task_defs()) out.push_back(d.name);
    return out;
  }();
  return names;
}

Json run_pipeline(const PipelineConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  Json rep;
  rep["schema"] = "gsc-report/1";
  rep["canonical_order"] = "graded lexicographic, x1 > ... > xn, largest monomial first";
  int exit_code = kExitPass;
  try {
    GroupSpec g;
    g.n = static_cast<int>(config.weights.size());
    g.torus_weights = config.weights;
    g.finite_orders = config.finite_orders;
    g.finite_weights = config.finite_weights;
    validate(g);
    const int n = g.n;
    if (config.truncation > 0 && config.truncation < n + 2)
      throw ValidationError("truncation must be at least n + 2 = " + std::to_string(n + 2));
    const int D = config.truncation > 0 ? config.truncation : std::max(3 * n, n + 2);
    const auto tasks = expand_tasks(config.tasks);

    {
      Json cfg;
      cfg["weights"] = config.weights;
      cfg["finite_orders"] = config.finite_orders;
      cfg["finite_weights"] = config.finite_weights;
      cfg["truncation"] = D;
      cfg["window_convention"] = convention_name(config.window);
      cfg["tasks"] = tasks;
      rep["config"] = std::move(cfg);
    }

    Ctx ctx;
    ctx.g = std::move(g);
    ctx.D = D;
    ctx.conv = config.window;

    Json tasks_json;
    int max_sev = kExitPass;
    bool all_pass = true;
    for (const auto& name : tasks) run_one(ctx, name, tasks_json, max_sev, all_pass);
    rep["tasks"] = std::move(tasks_json);
    rep["status"] = all_pass ? "pass" : "fail";
    exit_code = all_pass ? kExitPass : std::max(max_sev, kExitValidation);
  } catch (const ValidationError& ex) {
    rep["config_error"] = ex.what();
    rep["status"] = "fail";
    exit_code = kExitValidation;
  } catch (const std::exception& ex) {
    rep["config_error"] = ex.what();
    rep["status"] = "fail";
    exit_code = kExitInternal;
  }
  rep["exit_code"] = exit_code;
  if (config.include_timing) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
  }
  return rep;
}

int report_exit_code(const Json& report) {
  if (report.contains("exit_code")) return report["exit_code"].get<int>();
  return kExitInternal;
}

std::vector<Json> run_batch(const std::vector<PipelineConfig>& items, int workers) {
  std::vector<Json> out(items.size());
  if (items.empty()) return out;
  const int threads =
      std::max(1, std::min(workers, static_cast<int>(items.size())));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        out[i] = run_pipeline(items[i]);
      } catch (const std::exception& ex) { // run_pipeline catches; this is a belt
        Json r;
        r["schema"] = "gsc-report/1";
        r["config_error"] = ex.what();
        r["status"] = "fail";
        r["exit_code"] = kExitInternal;
        out[i] = std::move(r);
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int k = 0; k < threads; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

Json batch_summary(const std::vector<Json>& reports) {
  Json summary;
  summary["schema"] = "gsc-batch/1";
  Json items = Json::array();
  int passed = 0;
  for (size_t i = 0; i < reports.size(); ++i) {
    const Json& r = reports[i];
    Json row;
    row["index"] = i;
    row["weights"] =
        (r.contains("config") && r["config"].contains("weights")) ? r["config"]["weights"]
                                                                  : Json(nullptr);
    row["status"] = r.contains("status") ? r["status"] : Json("fail");
    row["exit_code"] = report_exit_code(r);
    Json per_task;
    if (r.contains("tasks"))
      for (const auto& [name, body] : r["tasks"].items()) per_task[name] = body["status"];
    row["tasks"] = std::move(per_task);
    row["ext_vanishing"] =
        (r.contains("tasks") && r["tasks"].contains("tilting") &&
         r["tasks"]["tilting"].contains("ext_vanishing"))
            ? r["tasks"]["tilting"]["ext_vanishing"]
            : Json(nullptr);
    if (report_exit_code(r) == kExitPass) ++passed;
    items.push_back(std::move(row));
  }
  summary["items"] = std::move(items);
  Json counts;
  counts["total"] = reports.size();
  counts["passed"] = passed;
  counts["failed"] = reports.size() - static_cast<size_t>(passed);
  summary["counts"] = std::move(counts);
  return summary;
}

// ---- configuration parsing -------------------------------------------------

namespace {

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("malformed " + what + ": '" + text + "'");
  }
}

} // namespace

std::vector<int> parse_weight_csv(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_int(trimmed(tok), "weight"));
  if (out.empty()) throw ValidationError("empty weight list");
  return out;
}

void parse_finite_spec(const std::string& text, PipelineConfig& config) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw ValidationError("finite factor must look like m:c1,c2,... , got '" + text + "'");
  const int order = parse_int(trimmed(text.substr(0, colon)), "finite order");
  if (order < 2) throw ValidationError("finite order must be at least 2");
  std::vector<int> residues = parse_weight_csv(text.substr(colon + 1));
  for (int& c : residues) c = ((c % order) + order) % order;
  config.finite_orders.push_back(order);
  config.finite_weights.push_back(std::move(residues));
}

PipelineConfig parse_batch_line(const std::string& line) {
  PipelineConfig config;
  config.include_timing = false; // batch rows must be byte-deterministic
  std::stringstream ss(line);
  std::string tok;
  bool have_weights = false;
  while (ss >> tok) {
    const size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      if (have_weights) throw ValidationError("unexpected token '" + tok + "' in batch line");
      config.weights = parse_weight_csv(tok);
      have_weights = true;
      continue;
    }
    const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
    if (key == "truncation") {
      config.truncation = parse_int(value, "truncation");
    } else if (key == "finite") {
      parse_finite_spec(value, config);
    } else if (key == "tasks") {
      std::stringstream ts(value);
      std::string t;
      while (std::getline(ts, t, ','))
        if (!trimmed(t).empty()) config.tasks.push_back(trimmed(t));
    } else {
      throw ValidationError("unknown batch key '" + key + "'");
    }
  }
  if (!have_weights) throw ValidationError("batch line has no weight list: '" + line + "'");
  return config;
}

std::vector<PipelineConfig> parse_batch_file(const std::string& contents) {
  std::vector<PipelineConfig> items;
  std::stringstream ss(contents);
  std::string line;
  while (std::getline(ss, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trimmed(line);
    if (line.empty()) continue;
    items.push_back(parse_batch_line(line));
  }
  return items;
}

} // namespace gsc
