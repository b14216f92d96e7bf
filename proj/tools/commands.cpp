#include "commands.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "clift/document.hpp"

namespace clift::cli {

namespace {

struct Context {
  const Inputs& in;
  std::optional<Tower> tower;
  Bundle bundle;
};

Loaded load_path(const std::string& path, const std::optional<AlgebraDoc>& ctx) {
  return load_document(parse_json(read_file(path)), ctx);
}

Context gather(const Inputs& in) {
  Context c{in, std::nullopt, {}};
  std::optional<AlgebraDoc> ctx;
  if (in.tower) {
    Loaded t = load_path(*in.tower, std::nullopt);
    require(t.schema == "tower", Errc::SchemaMismatch, "--tower expects a tower document");
    c.tower = t.tower;
    ctx = default_algebra_doc(mk_scalar_algebra(*t.tower));
  }
  if (in.algebra) {
    Loaded a = load_path(*in.algebra, std::nullopt);
    require(a.schema == "algebra", Errc::SchemaMismatch, "--algebra expects an algebra document");
    ctx = a.bundle.algebra;
  }
  if (in.complex) {
    Loaded d = load_path(*in.complex, ctx);
    require(d.schema == "complex" || d.schema == "problem", Errc::SchemaMismatch,
            "--complex expects a complex or problem document");
    c.bundle = std::move(d.bundle);
  } else if (ctx) {
    c.bundle.algebra = ctx;
  }
  if (in.map) {
    std::optional<AlgebraDoc> mctx = c.bundle.algebra ? c.bundle.algebra : ctx;
    Loaded m = load_path(*in.map, mctx);
    require(m.schema == "map" || m.schema == "problem", Errc::SchemaMismatch,
            "--map expects a map or problem document");
    if (!c.bundle.algebra) c.bundle.algebra = m.bundle.algebra;
    for (auto& [name, f] : m.bundle.maps) c.bundle.maps.insert_or_assign(name, f);
    for (auto& [name, C] : m.bundle.complexes) c.bundle.complexes.emplace(name, C);
  }
  return c;
}

Json report(const std::string& command, const std::string& verdict) {
  return {{"command", command}, {"verdict", verdict}, {"tool_version", kToolVersion}};
}

Outcome finish(Json j, int code, std::string summary) {
  j["summary"] = summary;
  return Outcome{code, canonical(j), std::move(summary)};
}

std::string coords_str(const FpVector& v) {
  std::ostringstream ss;
  ss << "(";
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i];
  ss << ")";
  return ss.str();
}

Outcome lift_outcome(const std::string& command, const LiftReport& r, const DeformedAlgebra& A, bool classified) {
  const bool ok = r.lifts();
  Json j = report(command, !ok ? "obstructed" : classified ? "classified" : "lifts");
  j["result"] = lift_report_json(r, A);
  std::string s = ok ? "unobstructed" : "obstructed: class in H^" + std::to_string(r.obstruction.degree) + " = " +
                                            coords_str(r.obstruction.rep);
  if (ok && classified) s += ", " + std::to_string(r.representatives.size()) + " classes";
  return finish(std::move(j), ok ? 0 : 2, s);
}

PreComplex at_level(const DeformedAlgebra& A, const PreComplex& C, Level level) {
  if (C.level() == level) return C;
  if (level == Level::Bar) return graded_lift(A, C);
  return reduce(A, C, level);
}

BaseComplex base_of(const Bundle& b) { return base_complex_of(b.A(), at_level(b.A(), b.complex("C"), Level::Base)); }

DifferentialProblem diff_problem(const Bundle& b) {
  return DifferentialProblem(b.A(), make_complex(at_level(b.A(), b.complex("C"), Level::Mid).d));
}

ArtinRing functor_ring(const Context& c, int p) {
  if (c.tower) return artin_ring(c.tower->bar());
  return artin_ring(trunc_poly_ring(p, 2));
}

std::vector<RingTriple> standard_triples(int p) {
  const ArtinRing eps = artin_ring(trunc_poly_ring(p, 2));
  const ArtinRing delta = artin_ring(square_zero_ring(p, 1));
  const ArtinRing cube = artin_ring(trunc_poly_ring(p, 3));
  const RingHom to_dual = quotient_map(cube.ring, ideal_power(cube, 2));
  const FiniteRing& Q = to_dual.target();
  std::vector<Elem> id;
  for (int i = 0; i < Q.dim(); ++i) id.push_back(Q.table().basis(i));
  return {RingTriple{eps.residue, delta.residue}, RingTriple{eps.residue, cube.residue},
          RingTriple{to_dual, RingHom(Q, Q, id)}};
}

using Handler = std::function<Outcome(const std::string&, Context&)>;

Outcome cmd_gen(const std::string& name, Context& c) {
  const std::uint64_t s = c.in.seed;
  InstanceSpec spec;
  spec.seed = s;
  spec.p = s % 2 ? 3 : 2;
  const TowerKind kinds[] = {TowerKind::ZMod, TowerKind::TruncPoly, TowerKind::SquareZero};
  spec.tower = kinds[(s / 2) % 3];
  spec.algebra = (s / 6) % 2 ? AlgebraKind::Custom : AlgebraKind::Trivial;
  spec.max_window = 3;
  Instance inst = gen_instance(spec);
  Bundle b;
  b.algebra = default_algebra_doc(inst.A);
  b.complexes.emplace("C", inst.C);
  b.params["seed"] = static_cast<long long>(s);
  (void)name;
  return Outcome{0, canonical(bundle_document(b)), "generated instance for seed " + std::to_string(s)};
}

Outcome cmd_oracle(const std::string& name, Context& c) {
  const Bundle& b = c.bundle;
  OracleOptions opt;
  opt.cap = c.in.cap;
  opt.threads = c.in.threads;
  Json j;
  bool agree = false;
  std::string s;
  if (b.has_map("f") && b.has_complex("D")) {
    const auto& A = b.A();
    MapProblem P(A, at_level(A, b.complex("C"), Level::Bar), at_level(A, b.complex("D"), Level::Bar), b.map("f"));
    const LiftReport r = obstruct_and_lift_map(P, true, c.in.cap);
    const OracleResult o = oracle_map(P, opt);
    agree = r.lifts() == !o.witnesses.empty() && (!r.lifts() || r.representatives.size() == o.partition.size());
    j = report(name, agree ? "verified" : "failed");
    j["result"] = lift_report_json(r, A);
    j["oracle"] = oracle_json(o);
    s = std::to_string(o.witnesses.size()) + " map lifts in " + std::to_string(o.partition.size()) + " classes";
  } else {
    const DifferentialProblem P = diff_problem(b);
    const CohClass ob = obstruct_differential(P);
    const LiftReport r = ob.is_zero() ? classify_lifts(P, c.in.cap) : LiftReport{ob, {}, 1, 0, {}, {}};
    const OracleResult o = oracle_differential(P, opt);
    agree = r.lifts() == !o.witnesses.empty() && (!r.lifts() || r.representatives.size() == o.partition.size());
    j = report(name, agree ? "verified" : "failed");
    j["result"] = lift_report_json(r, P.A);
    j["oracle"] = oracle_json(o);
    s = std::to_string(o.witnesses.size()) + " lifts in " + std::to_string(o.partition.size()) + " classes";
  }
  return finish(std::move(j), agree ? 0 : 1, (agree ? "oracle agrees: " : "oracle DISAGREES: ") + s);
}

Outcome cmd_crude(const std::string& name, Context& c) {
  const Bundle& b = c.bundle;
  const auto& A = b.A();
  HomotopyEquivData E{b.complex("C"), b.complex("D"), b.map("f"), b.map("g"), b.map("H"), b.map("K")};
  E.C = make_complex(E.C.d);
  E.D = make_complex(E.D.d);
  const CrudeResult r = crude_lift(A, E, b.map("dD_bar"), c.in.trace);
  const auto failures = crude_postcondition_failures(A, E, b.map("dD_bar"), r);
  Json j = report(name, failures.empty() ? "lifts" : "failed");
  j["result"] = {{"dC", map_payload(r.dC, A)}, {"f", map_payload(r.f, A)}, {"g", map_payload(r.g, A)},
                 {"H", map_payload(r.H, A)},   {"K", map_payload(r.K, A)}, {"K_prime", map_payload(r.K_prime, A)},
                 {"failed_postconditions", failures}};
  if (c.in.trace) {
    Json stages = Json::array();
    for (const auto& st : r.trace)
      stages.push_back({{"stage", st.name},
                        {"dC_squared_zero", st.dC_squared_zero},
                        {"f_closed", st.f_closed},
                        {"g_closed", st.g_closed},
                        {"dC", map_payload(st.dC, A)},
                        {"f", map_payload(st.f, A)},
                        {"g", map_payload(st.g, A)},
                        {"H", map_payload(st.H, A)},
                        {"K", map_payload(st.K, A)}});
    j["trace"] = stages;
  }
  return finish(std::move(j), failures.empty() ? 0 : 1,
                failures.empty() ? "homotopy equivalence lifted" : "postcondition failed: " + failures.front());
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"obstruct-diff",
       [](const std::string& n, Context& c) {
         const DifferentialProblem P = diff_problem(c.bundle);
         LiftReport r;
         r.obstruction = obstruct_differential(P);
         return lift_outcome(n, r, P.A, false);
       }},
      {"lift-diff",
       [](const std::string& n, Context& c) {
         const DifferentialProblem P = diff_problem(c.bundle);
         return lift_outcome(n, lift_differential(P), P.A, false);
       }},
      {"classify",
       [](const std::string& n, Context& c) {
         const DifferentialProblem P = diff_problem(c.bundle);
         const CohClass o = obstruct_differential(P);
         if (!o.is_zero()) return lift_outcome(n, LiftReport{o, {}, 1, 0, {}, {}}, P.A, true);
         return lift_outcome(n, classify_lifts(P, c.in.cap), P.A, true);
       }},
      {"lift-map",
       [](const std::string& n, Context& c) {
         const Bundle& b = c.bundle;
         const auto& A = b.A();
         MapProblem P(A, at_level(A, b.complex("C"), Level::Bar), at_level(A, b.complex("D"), Level::Bar),
                      b.map("f"));
         return lift_outcome(n, obstruct_and_lift_map(P, true, c.in.cap), A, true);
       }},
      {"lift-homotopy",
       [](const std::string& n, Context& c) {
         const Bundle& b = c.bundle;
         const auto& A = b.A();
         HomotopyProblem P(A, at_level(A, b.complex("C"), Level::Bar), at_level(A, b.complex("D"), Level::Bar),
                           b.map("H"), b.map("fbar"), b.map("gbar"));
         return lift_outcome(n, obstruct_and_lift_homotopy(P, true, c.in.cap), A, true);
       }},
      {"crude-lift", cmd_crude},
      {"classify-homotopy",
       [](const std::string& n, Context& c) {
         const auto& A = c.bundle.A();
         const PreComplex C = make_complex(at_level(A, c.bundle.complex("C"), Level::Mid).d);
         return lift_outcome(n, classify_homotopy_lifts(A, C, c.in.cap), A, true);
       }},
      {"tangent",
       [](const std::string& n, Context& c) {
         const BaseComplex bc = base_of(c.bundle);
         const int t = tangent_dim(bc);
         Json j = report(n, "classified");
         j["result"] = {{"tangent_dim", t}, {"p", bc.p}};
         return finish(std::move(j), 0, "tangent space of dimension " + std::to_string(t));
       }},
      {"functor-eval",
       [](const std::string& n, Context& c) {
         const BaseComplex bc = base_of(c.bundle);
         const ArtinRing R = functor_ring(c, bc.p);
         FunctorCaps caps;
         caps.max_lift_space = c.in.cap;
         const FunctorValue v = functor_eval(functor_tag_from_name(c.in.functor), R, bc, caps);
         Json blocks = Json::array();
         for (const auto& b : v.classes) blocks.push_back(b);
         Json j = report(n, "classified");
         j["result"] = {{"functor", functor_tag_name(v.tag)},
                        {"ring_order", R.ring.cardinality()},
                        {"lifts", v.lifts.size()},
                        {"size", v.size()},
                        {"classes", blocks}};
         return finish(std::move(j), 0,
                       std::string(functor_tag_name(v.tag)) + "(R) has " + std::to_string(v.size()) + " elements");
       }},
      {"schlessinger",
       [](const std::string& n, Context& c) {
         const BaseComplex bc = base_of(c.bundle);
         FunctorCaps caps;
         caps.max_lift_space = c.in.cap;
         const auto results = schlessinger_check(bc, standard_triples(bc.p), caps);
         Json rs = Json::array();
         for (const auto& r : results)
           rs.push_back({{"f0_fiber", r.f0_fiber},
                         {"f0_pairs", r.f0_pairs},
                         {"f0_bijective", r.f0_bijective},
                         {"s1_applicable", r.s1_applicable},
                         {"s1_surjective", r.s1_surjective},
                         {"s2_applicable", r.s2_applicable},
                         {"s2_bijective", r.s2_bijective},
                         {"smooth_pairs", r.smooth_pairs}});
         Json j = report(n, "verified");
         j["result"] = {{"triples", rs}};
         return finish(std::move(j), 0, std::to_string(results.size()) + " ring triples checked");
       }},
      {"extend-order",
       [](const std::string& n, Context& c) {
         const Bundle& b = c.bundle;
         const BaseComplex bc = base_of(b);
         auto it = b.params.find("order");
         require(it != b.params.end(), Errc::ValidationError, "extend-order needs params.order");
         const ExtendResult r = extend_order(bc, b.map("d"), static_cast<int>(it->second));
         const bool ok = r.report.lifts();
         Json j = report(n, ok ? "lifts" : "obstructed");
         j["order"] = r.order;
         j["result"] = {{"obstruction", class_json(r.report.obstruction)}, {"lifts", ok}};
         return finish(std::move(j), ok ? 0 : 2,
                       ok ? "extends to order " + std::to_string(r.order)
                          : "obstructed at order " + std::to_string(r.order) + ": " +
                                coords_str(r.report.obstruction.rep));
       }},
      {"oracle", cmd_oracle},
      {"gen", cmd_gen},
  };
  return h;
}

}  // namespace

Outcome run(const std::string& command, const Inputs& in) {
  try {
    auto it = handlers().find(command);
    require(it != handlers().end(), Errc::InvalidArgument, "unknown command '" + command + "'");
    Context c = gather(in);
    return it->second(command, c);
  } catch (const Error& e) {
    Json j = report(command, "failed");
    j["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    return finish(std::move(j), 1, e.what());
  } catch (const std::exception& e) {
    Json j = report(command, "failed");
    j["error"] = {{"code", "InternalError"}, {"message", e.what()}};
    return finish(std::move(j), 1, e.what());
  }
}

}  // namespace clift::cli
