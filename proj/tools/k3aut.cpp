// k3aut: command-line access to the lattice, counting, zeta and certification code.
//
// Exit codes: 0 success, 1 internal error or a failed check, 2 inconclusive
// semi-decision, 3 invalid input.

#include "k3aut/counting.hpp"
#include "k3aut/groupcert.hpp"
#include "k3aut/io.hpp"
#include "k3aut/normal_form.hpp"
#include "k3aut/reflection.hpp"
#include "k3aut/scenarios.hpp"
#include "k3aut/zeta.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace k3aut;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInconclusive = 2;
constexpr int kBadInput = 3;

struct Output {
  std::string path;
  bool json_stdout = false;
};

void emit(const Output& out, const Json& j, const std::string& summary) {
  if (!out.path.empty()) {
    std::ofstream f(out.path);
    if (!f) throw std::invalid_argument("cannot write " + out.path);
    f << j.dump(2) << '\n';
  }
  if (out.json_stdout)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << summary;
}

void add_output(CLI::App* app, Output& out) {
  app->add_option("--out", out.path, "Write the JSON result to this file");
  app->add_flag("--json", out.json_stdout, "Print JSON instead of the summary");
}

std::string rat_string(const Rat& r) { return k3aut::to_string(r); }

int report_exit(const Report& r) {
  switch (r.status()) {
    case ReportStatus::Pass:
      return kOk;
    case ReportStatus::Inconclusive:
      return kInconclusive;
    case ReportStatus::Fail:
      break;
  }
  return kFail;
}

std::string report_summary(const Report& r) {
  std::ostringstream s;
  s << r.scenario << ": " << to_string(r.status()) << '\n';
  for (const Check& c : r.checks)
    s << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << " = " << c.computed.dump()
      << (c.pass ? "" : " (expected " + c.expected.dump() + ")") << '\n';
  if (r.results.contains("certificate")) s << "  certificate: " << r.results["certificate"].dump() << '\n';
  return s.str();
}

std::vector<unsigned> parse_orbits(const std::string& spec) {
  std::vector<unsigned> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v <= 0) throw std::invalid_argument("bad orbit size '" + tok + "'");
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: " + s);
  r.canonicalize();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return r;
}

// ---------------------------------------------------------------- example

int run_example(const std::string& which, const std::string& c, unsigned threads, const Output& out) {
  const PublishedConstants pc = PublishedConstants::load_default();
  Report r;
  if (which == "four-a1") {
    r = four_a1_report(pc);
  } else if (which == "two-conics") {
    r = two_conics_report(pc);
  } else {
    DiagonalOptions opt;
    opt.threads = threads;
    r = diagonal_report(pc, parse_rat(c), opt);
  }
  emit(out, r.to_json(), report_summary(r));
  return report_exit(r);
}

// ---------------------------------------------------------------- count

int run_count(const std::string& surface, unsigned max_n, unsigned threads, const std::string& method,
              const Output& out) {
  const bool path_like = surface.find('/') != std::string::npos || surface.find(".json") != std::string::npos;
  const SurfaceModel m = load_surface(path_like ? surface : shipped_surface_path(surface));
  CountOptions opt;
  opt.threads = threads;
  PointCountSeries s{m.p, {}};
  std::ostringstream sum;
  sum << m.name << " over F_" << m.p << "^n\n";
  for (unsigned n = 1; n <= max_n; ++n) {
    const std::uint64_t k = method == "direct" ? count_direct(m, n, opt) : count_fibered(m, n, opt);
    s.counts.push_back(Int(static_cast<unsigned long>(k)));
    sum << "  n = " << n << ": " << k << '\n';
  }
  Json j = to_json(s);
  j["surface"] = m.name;
  j["method"] = method;
  j["surface_digest"] = digest_hex(canonical_surface_string(m));
  emit(out, j, sum.str());
  return kOk;
}

// ---------------------------------------------------------------- zeta

int run_zeta(const std::string& counts_file, unsigned dim, const std::string& orbit_spec,
             const std::string& poly_file, const Output& out) {
  const PointCountSeries s = counts_from_json(read_json_file(counts_file));
  const std::vector<unsigned> orbits = parse_orbits(orbit_spec);
  std::ostringstream sum;
  Json j;
  j["p"] = s.p;
  j["orbits"] = orbits;
  if (!poly_file.empty()) {
    const RatPoly f = poly_from_json(read_json_file(poly_file));
    const VerificationResult v = verify_quotient_poly(s, orbits, f);
    const unsigned want = static_cast<unsigned>(s.counts.size());
    j["verified"] = v.verified;
    j["checked_n"] = v.checked_n;
    j["mismatched_n"] = v.mismatched_n;
    Json pred = Json::array();
    for (const Int& x : predicted_counts(s.p, orbits, f, want)) pred.push_back(to_json(x));
    j["predicted_counts"] = std::move(pred);
    sum << "polynomial " << (v.verified ? "verified" : "does not match") << " on n = 1.." << want << '\n';
    if (!v.mismatched_n.empty()) {
      sum << "  mismatched n:";
      for (unsigned n : v.mismatched_n) sum << ' ' << n;
      sum << '\n';
    }
    emit(out, j, sum.str());
    return v.verified ? kOk : kFail;
  }
  const ZetaResult z = picard_rank_bound(s, orbits, dim);
  Json traces = Json::array();
  for (const Rat& t : z.quotient_traces) traces.push_back(to_json(t));
  j["quotient_traces"] = std::move(traces);
  Json cands = Json::array();
  for (const RatPoly& f : z.quotient.candidates) cands.push_back(to_json(f));
  j["quotient_candidates"] = std::move(cands);
  j["signs"] = z.quotient.signs;
  j["ambiguous"] = z.quotient.ambiguous;
  j["unit_roots"] = z.unit_roots;
  j["rank_bound"] = z.rank_bound;
  sum << "quotient dimension " << (z.quotient.candidates.empty() ? 0 : z.quotient.candidates.front().degree())
      << ", sign " << (z.quotient.ambiguous ? "ambiguous" : std::to_string(z.quotient.signs.front()))
      << ", Picard rank bound " << z.rank_bound << '\n';
  for (const RatPoly& f : z.quotient.candidates) sum << "  f = " << f.to_string() << '\n';
  emit(out, j, sum.str());
  return kOk;
}

// ---------------------------------------------------------------- lattice

Json overlattice_json(const Overlattice& ov) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < ov.basis.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < ov.basis.cols(); ++j) row.push_back(rat_string(ov.basis(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"index", to_json(ov.index)}, {"basis", std::move(rows)}, {"gram", to_json(ov.lattice.gram())}};
}

int run_lattice(const std::string& op, const std::string& file, const std::string& other, const std::string& action,
                long bound, const Output& out) {
  const Lattice L = lattice_from_json(read_json_file(file));
  std::ostringstream sum;
  Json j;
  if (op == "info") {
    const Signature sig = signature(L);
    const DiscriminantData d = discriminant_group(L);
    j = {{"rank", L.rank()},
         {"signature", {sig.positive, sig.negative}},
         {"det", to_json(determinant(L))},
         {"even", L.is_even()},
         {"discriminant_invariants", to_json(d.invariant_factors)}};
    if (d.order() <= 4096) j["aut_discriminant_form"] = aut_discriminant_form(d).order;
    sum << "rank " << L.rank() << ", signature (" << sig.positive << "," << sig.negative << "), det "
        << determinant(L) << (L.is_even() ? ", even" : ", odd") << '\n';
  } else if (op == "fixed") {
    if (action.empty()) throw std::invalid_argument("lattice fixed needs --action");
    const Json a = read_json_file(action);
    GroupAction H;
    for (const Json& g : a.at("generators")) H.generators.push_back(int_mat_from_json(g));
    const Sublattice s = fixed_sublattice(L, H);
    j = {{"basis", to_json(s.basis)}, {"gram", to_json(s.gram)}, {"degenerate", s.degenerate}};
    sum << "fixed sublattice of rank " << s.rank() << (s.degenerate ? " (degenerate)" : "") << '\n'
        << s.gram << '\n';
  } else if (op == "saturate") {
    const Overlattice ov = saturate_by_halving(L);
    j = overlattice_json(ov);
    sum << "index " << ov.index << ", det " << determinant(ov.lattice) << '\n';
  } else {
    if (other.empty()) throw std::invalid_argument("lattice isometry needs --other");
    const Lattice L2 = lattice_from_json(read_json_file(other));
    const IsometrySearchResult r = isometry_search(L, L2, bound);
    const char* names[] = {"found", "inconclusive", "not_isometric"};
    j = {{"status", names[static_cast<int>(r.status)]}, {"reason", r.reason}};
    if (r.map) j["map"] = to_json(*r.map);
    sum << names[static_cast<int>(r.status)] << (r.reason.empty() ? "" : ": " + r.reason) << '\n';
    emit(out, j, sum.str());
    return r.status == IsometryStatus::Inconclusive ? kInconclusive : kOk;
  }
  emit(out, j, sum.str());
  return kOk;
}

// ---------------------------------------------------------------- certify

int run_certify(const std::string& file, const Output& out) {
  const Json in = read_json_file(file);
  const IntMat gram = int_mat_from_json(in.at("gram"));
  const Lattice L(gram);
  std::vector<IntMat> gens;
  for (const Json& g : in.at("generators")) gens.push_back(int_mat_from_json(g));
  std::vector<IntVec> walls;
  std::vector<IntMat> refl;
  for (const Json& w : in.at("walls")) {
    walls.push_back(int_vec_from_json(w));
    refl.push_back(reflection_matrix(gram, walls.back()));
  }
  for (const IntMat& g : gens)
    if (!preserves_gram(g, gram)) throw std::invalid_argument("a generator does not preserve the form");
  const IntVec y = int_vec_from_json(in.at("base_point"));
  const std::size_t cap = in.value("coset_cap", std::size_t{10000});
  const CertificationResult r = certify_finite_quotient(gram, gens, walls, refl, y, cap);
  Json j{{"explored", r.explored}};
  std::ostringstream sum;
  if (r.status != CertStatus::Certified) {
    j["status"] = "inconclusive";
    j["reason"] = r.reason;
    sum << "inconclusive: " << r.reason << '\n';
    emit(out, j, sum.str());
    return kInconclusive;
  }
  const FiniteIndexCertificate& c = *r.certificate;
  const bool ok = verify_certificate(c, gram, gens, walls, refl, y);
  Json reps = Json::array();
  for (const IntMat& m : c.representatives) reps.push_back(to_json(m));
  j["status"] = ok ? "certified" : "verification_failed";
  j["index"] = c.index();
  j["representatives"] = std::move(reps);
  j["action"] = c.action;
  std::ostringstream h;
  h << std::hex << c.transcript_hash;
  j["transcript"] = h.str();
  sum << (ok ? "certified" : "verification failed") << ": index " << c.index() << " after " << r.explored
      << " steps\n";
  emit(out, j, sum.str());
  return ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice and point-count tools for K3 automorphism finiteness"};
  app.require_subcommand(1);
  Output out;

  std::string which, c = "3";
  unsigned threads = 1;
  auto* ex = app.add_subcommand("example", "Run a worked example and check it against the shipped constants");
  ex->add_option("name", which, "four-a1, two-conics or diagonal")
      ->required()
      ->check(CLI::IsMember({"four-a1", "two-conics", "diagonal"}));
  ex->add_option("--c", c, "Coefficient of the diagonal quartic");
  ex->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
  add_output(ex, out);

  std::string surface, method = "fibered";
  unsigned max_n = 1;
  auto* cnt = app.add_subcommand("count", "Count points over F_{p^n}, n = 1..max-n");
  cnt->add_option("--surface", surface, "Surface JSON file or shipped name (u3, y3, y5)")->required();
  cnt->add_option("--max-n", max_n, "Largest extension degree")->required()->check(CLI::Range(1u, 12u));
  cnt->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
  cnt->add_option("--method", method, "direct or fibered")->check(CLI::IsMember({"direct", "fibered"}));
  add_output(cnt, out);

  std::string counts_file, orbits, poly_file;
  unsigned dim = 22;
  auto* zt = app.add_subcommand("zeta", "Frobenius polynomial and Picard rank bound from point counts");
  zt->add_option("--counts", counts_file, "JSON {p, counts}")->required()->check(CLI::ExistingFile);
  zt->add_option("--dim", dim, "Dimension of H^2")->check(CLI::Range(2u, 100u));
  zt->add_option("--orbits", orbits, "Comma-separated Galois orbit sizes of the known classes")->required();
  zt->add_option("--verify-poly", poly_file, "Check this quotient polynomial against the counts")
      ->check(CLI::ExistingFile);
  add_output(zt, out);

  std::string lop, lfile, other, action;
  long bound = 5;
  auto* lat = app.add_subcommand("lattice", "Lattice invariants and constructions");
  lat->add_option("op", lop, "info, fixed, saturate or isometry")
      ->required()
      ->check(CLI::IsMember({"info", "fixed", "saturate", "isometry"}));
  lat->add_option("--lattice", lfile, "Lattice JSON {gram}")->required()->check(CLI::ExistingFile);
  lat->add_option("--other", other, "Second lattice for isometry")->check(CLI::ExistingFile);
  lat->add_option("--action", action, "JSON {generators} for fixed")->check(CLI::ExistingFile);
  lat->add_option("--bound", bound, "Coefficient bound for the isometry search")->check(CLI::Range(1L, 50L));
  add_output(lat, out);

  std::string cert_file;
  auto* cer = app.add_subcommand("certify", "Finite-index certificate for a reflection subgroup");
  cer->add_option("--input", cert_file, "JSON {gram, generators, walls, base_point, coset_cap?}")
      ->required()
      ->check(CLI::ExistingFile);
  add_output(cer, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*ex) return run_example(which, c, threads, out);
    if (*cnt) return run_count(surface, max_n, threads, method, out);
    if (*zt) return run_zeta(counts_file, dim, orbits, poly_file, out);
    if (*lat) return run_lattice(lop, lfile, other, action, bound, out);
    if (*cer) return run_certify(cert_file, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kFail;
}
