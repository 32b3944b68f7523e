#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "zslice/blanch.hpp"
#include "zslice/bounds.hpp"
#include "zslice/crit2.hpp"
#include "zslice/cycres.hpp"
#include "zslice/errors.hpp"
#include "zslice/finpair.hpp"
#include "zslice/knotio.hpp"

#ifdef ZSLICE_HAVE_ACCEPTANCE
#include "acceptance.hpp"
#endif

namespace zslice::cli {

using nlohmann::json;

namespace {

json jint(const Integer& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.get_str();
}

json jmatrix(const ExactMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(jint(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json jdecomposition(const CyclicDecomposition& d) {
  json out = json::array();
  for (const auto& s : d) out.push_back({{"a", jint(s.a)}, {"q", jint(s.q)}});
  return out;
}

json jtagged(const TaggedBound& b) {
  json tags = json::array();
  for (auto t : b.tags) tags.push_back(to_string(t));
  return {{"value", b.value}, {"tags", tags}};
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    require(used == std::string(v).size() && x > 0, "");
    return x;
  } catch (const std::exception&) {
    throw InputError(std::string(name) + " must be a positive integer, got '" + v + "'");
  }
}

std::vector<KnotRecord> read_knots(const std::string& file) {
  return parse_knot_file(read_input(file), file == "-" ? "<stdin>" : file);
}

std::string hit_text(const Cor53Hit& h) {
  std::string s = "Cor5.3(" + to_string(h.which) + "): ";
  if (h.ua_at_least_3) s += "u_a >= 3, ";
  return s + "g_Z >= 2";
}

json jhits(const std::vector<Cor53Hit>& hits) {
  json out = json::array();
  for (const auto& h : hits)
    out.push_back({{"case", to_string(h.which)}, {"ua_at_least_3", h.ua_at_least_3},
                   {"gz_at_least_2", h.gz_at_least_2}});
  return out;
}

std::string lambda0_rows(const Lambda0Matrix& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) os << (j ? "; " : "") << to_string(t(i, j));
    os << '\n';
  }
  return os.str();
}

}  // namespace

Budgets Budgets::from_env() {
  Budgets b;
  b.isometry = env_u64("OBSTRUCT_BUDGET", b.isometry);
  b.prime_bound = long(env_u64("PRIME_BOUND", std::uint64_t(b.prime_bound)));
  return b;
}

std::string read_input(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  require(bool(in), "cannot open " + path);
  os << in.rdbuf();
  return os.str();
}

int run_invariants(const std::string& file, const Common& c, std::ostream& out) {
  json all = json::array();
  for (const auto& r : read_knots(file)) {
    const LaurentPoly delta = alexander(r);
    const auto dc = double_cover_pairing(r.seifert);
    const long sigma = classical_signature(r);
    const int arf_value = arf(r);
    const std::size_t gens = min_generators_double_cover(r);
    const auto lk = decompose(dc.lk), ell = decompose(dc.ell);
    if (c.json) {
      all.push_back({{"name", r.name},
                     {"alexander", to_string(delta)},
                     {"determinant", jint(knot_determinant(r))},
                     {"signature", sigma},
                     {"arf", arf_value},
                     {"double_cover_generators", gens},
                     {"linking_pairing", jdecomposition(lk)},
                     {"doubled_pairing", jdecomposition(ell)}});
      continue;
    }
    out << "knot " << r.name << '\n'
        << "  alexander: " << to_string(delta) << '\n'
        << "  determinant: " << to_string(knot_determinant(r)) << '\n'
        << "  signature: " << sigma << '\n'
        << "  arf: " << arf_value << '\n'
        << "  double cover generators: " << gens << '\n'
        << "  linking pairing: " << to_string(lk) << '\n'
        << "  doubled pairing: " << to_string(ell) << '\n';
  }
  if (c.json) out << all.dump(2) << '\n';
  return 0;
}

int run_bounds(const BoundsArgs& a, const Common& c, std::ostream& out) {
  const auto knots = read_knots(a.file);
  BoundOptions opt;
  opt.seed = a.seed;
  opt.search_moves = a.moves;
  opt.use_lt = !a.no_lt;
  opt.use_cor53 = !a.no_cor53;
  opt.use_min_gens = !a.no_min_gens;
  opt.use_alex1 = !a.no_alex1;

  std::vector<std::optional<BoundReport>> reports(knots.size());
  std::vector<std::exception_ptr> errors(knots.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < knots.size(); i = next++) {
      try {
        reports[i] = report(knots[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(knots.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (!c.json) {
    for (const auto& r : reports) out << to_line(*r) << '\n';
    return 0;
  }
  json all = json::array();
  for (const auto& r : reports) {
    json item = {{"name", r->name},
                 {"gz_lower", jtagged(r->gz_lower)},
                 {"gz_upper", r->gz_upper},
                 {"gz_upper_witnessed", r->search.witnessed && r->search.genus == r->gz_upper},
                 {"ua_lower", jtagged(r->ua_lower)},
                 {"ua_upper", r->ua_upper},
                 {"gz", r->gz ? json(*r->gz) : json(nullptr)}};
    all.push_back(item);
  }
  out << all.dump(2) << '\n';
  return 0;
}

int run_obstruct(const std::string& file, const Common& c, std::ostream& out) {
  const Budgets budgets = Budgets::from_env();
  json all = json::array();
  int code = 0;
  for (const auto& r : read_knots(file)) {
    const Obstructions o = obstructions(r);
    json item = {{"name", r.name}, {"double_cover_generators", o.min_generators}};
    std::ostringstream line;
    line << r.name << ": generators " << o.min_generators;
    if (!o.cor53_applicable) {
      line << "; more than two generators: g_Z >= 2";
      item["applicable"] = false;
    } else {
      const CriterionInput in = criterion_input(o.ell, -1);
      const bool b = criterion_B(in);
      line << "; l = " << to_string(o.ell) << "; B(u=-1): " << (b ? "true" : "false");
      item["applicable"] = true;
      item["ell"] = jdecomposition(o.ell);
      item["B"] = b;
      item["cor53"] = jhits(o.cor53);
      for (const auto& h : o.cor53) line << "; " << hit_text(h);
      if (b) {
        try {
          const CWitness w = construct_witness(in, budgets.prime_bound);
          const ExactMatrix m = matrix_from_witness(w, in, budgets.isometry);
          line << "; presentation " << to_string(m);
          item["presentation"] = jmatrix(m);
        } catch (const BudgetExceeded& e) {
          line << "; presentation: budget exceeded (" << e.what() << ")";
          item["presentation"] = nullptr;
          code = 2;
        }
      }
    }
    if (c.json)
      all.push_back(item);
    else
      out << line.str() << '\n';
  }
  if (c.json) out << all.dump(2) << '\n';
  return code;
}

int run_decompose(const DecomposeArgs& a, const Common& c, std::ostream& out) {
  require(a.file.empty() != a.matrix.empty(), "decompose takes either a knot file or --matrix");
  if (!a.matrix.empty()) {
    std::vector<std::vector<long>> rows;
    std::string text = a.matrix;
    std::replace(text.begin(), text.end(), ',', ';');
    std::istringstream all(text);
    std::string row;
    while (std::getline(all, row, ';')) {
      std::istringstream rs(row);
      std::vector<long> r;
      std::string tok;
      while (rs >> tok) {
        try {
          std::size_t used = 0;
          r.push_back(std::stol(tok, &used));
          require(used == tok.size(), "");
        } catch (const std::exception&) {
          throw InputError("--matrix: not an integer: '" + tok + "'");
        }
      }
      if (!r.empty()) rows.push_back(r);
    }
    require(!rows.empty(), "--matrix is empty");
    for (const auto& r : rows) require(r.size() == rows.size(), "--matrix must be square");
    const ExactMatrix m = to_exact(rows);
    require(is_symmetric(m), "--matrix must be symmetric");
    require(determinant(m) != 0, "--matrix must be non-singular");
    const FinitePairing p = pairing_from_matrix(m);
    require(mod_floor(p.group_order(), Integer(2)) == 1, "decomposition needs a group of odd order");
    const CyclicDecomposition d = decompose(p);
    if (c.json)
      out << json{{"pairing", jdecomposition(d)}}.dump(2) << '\n';
    else
      out << to_string(d) << '\n';
    return 0;
  }
  json all = json::array();
  for (const auto& r : read_knots(a.file)) {
    const auto dc = double_cover_pairing(r.seifert);
    const auto lk = decompose(dc.lk), ell = decompose(dc.ell);
    if (c.json)
      all.push_back({{"name", r.name}, {"lk", jdecomposition(lk)}, {"ell", jdecomposition(ell)}});
    else
      out << r.name << ": lk " << to_string(lk) << "; l " << to_string(ell) << '\n';
  }
  if (c.json) out << all.dump(2) << '\n';
  return 0;
}

int run_criterion(const CriterionArgs& a, const Common& c, std::ostream& out) {
  const CriterionInput in{a.a1, a.q1, a.a2, a.q2, a.u};
  in.validate();
  const bool b = criterion_B(in);
  const auto hits = cor53(a.a1, a.q1, a.a2, a.q2);
  std::optional<CWitness> w;
  ExactMatrix m;
  if (b) {
    const Budgets budgets = Budgets::from_env();
    w = construct_witness(in, budgets.prime_bound);
    m = matrix_from_witness(*w, in, budgets.isometry);
  }
  if (c.json) {
    json j = {{"B", b}, {"B1", criterion_B1(in)}, {"B2", criterion_B2(in)}, {"cor53", jhits(hits)}};
    if (w) {
      j["witness"] = {{"alpha", w->alpha}, {"beta", w->beta}, {"gamma", w->gamma},
                      {"lambda1", w->lambda1}, {"lambda2", w->lambda2}};
      j["presentation"] = jmatrix(m);
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "B: " << (b ? "true" : "false");
  for (const auto& h : hits) out << "; " << hit_text(h);
  out << '\n';
  if (w) {
    out << "witness: alpha=" << w->alpha << " beta=" << w->beta << " gamma=" << w->gamma
        << " lambda1=" << w->lambda1 << " lambda2=" << w->lambda2 << '\n'
        << "presentation: " << to_string(m) << '\n';
  }
  return 0;
}

int run_normalize(const std::string& file, const Common& c, std::ostream& out) {
  const LambdaMatrix a = parse_lambda_matrix(read_input(file));
  const NormalizationCertificate cert = normalize_blanchfield(a);
  const std::string problem = check_certificate(a, cert);
  verify(problem.empty(), "normalization certificate rejected: " + problem);
  const ExactMatrix at1 = eval_at_pm1(cert.b, 1);
  std::size_t pos = 0, neg = 0;
  for (std::size_t i = 0; i < at1.rows(); ++i) (at1(i, i) > 0 ? pos : neg)++;
  if (c.json) {
    json t = json::array();
    for (std::size_t i = 0; i < cert.t.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < cert.t.cols(); ++j) row.push_back(to_string(cert.t(i, j)));
      t.push_back(row);
    }
    json b = json::array();
    for (std::size_t i = 0; i < cert.b.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < cert.b.cols(); ++j) row.push_back(to_string(cert.b(i, j)));
      b.push_back(row);
    }
    out << json{{"b", b}, {"t", t}, {"det_t", to_string(cert.det_t)}, {"positive", pos},
                {"negative", neg}, {"verified", true}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "normalized matrix:\n"
      << to_string(cert.b) << "base change:\n"
      << lambda0_rows(cert.t) << "det of base change: " << to_string(cert.det_t) << '\n'
      << "diagonal at t = 1: " << pos << " positive, " << neg << " negative\n"
      << "certificate verified\n";
  return 0;
}

int run_verify_odd_cover(const OddCoverArgs& a, const Common& c, std::ostream& out) {
  require(a.k >= 1, "--k must be at least 1");
  i64 m = 1;
  for (long i = 0; i < a.k; ++i) {
    require(m <= (i64(1) << 40) / a.q, "q^k is too large");
    m *= a.q;
  }
  const bool iso = all_pairings_isometric(a.p, a.q, a.k);
  const QuotRing r(a.p, m);
  std::string label = a.multiplier;
  QuotRing::Elem lambda;
  if (!label.empty()) {
    lambda = r.from_laurent(parse_laurent(label));
  } else if (a.p == 3 && m == 7) {
    label = "3+6t";
    lambda = r.from_laurent(parse_laurent(label));
  } else {
    lambda = solve_norm(r.from_int(-1), r);
    label = r.to_string(lambda);
  }
  const bool norm_ok = r.norm(lambda) == r.from_int(-1);
  if (c.json) {
    out << json{{"p", a.p}, {"q", a.q}, {"k", a.k}, {"all_pairings_isometric", iso},
                {"multiplier", label}, {"norm", r.to_string(r.norm(lambda))}, {"norm_is_minus_one", norm_ok}}
               .dump(2)
        << '\n';
  } else {
    out << "all pairings isometric: " << (iso ? "true" : "false") << "; norm(" << label << ") = ";
    if (norm_ok)
      out << "-1 verified\n";
    else
      out << r.to_string(r.norm(lambda)) << ", not -1\n";
  }
  return iso && norm_ok ? 0 : 3;
}

int run_selftest(const SelftestArgs& a, const Common& c, std::ostream& out) {
#ifdef ZSLICE_HAVE_ACCEPTANCE
  using namespace zslice::acceptance;
  Options opt;
  opt.table_data = a.data;
  std::vector<int> ids = a.criteria;
  if (ids.empty())
    for (int i = 1; i <= 8; ++i) ids.push_back(i);
  std::vector<Outcome> all;
  json j = json::array();
  for (int id : ids) {
    require(id >= 1 && id <= 8, "criteria are numbered 1 to 8");
    all.push_back(run_criterion(id, opt));
    const Outcome& o = all.back();
    if (c.json) {
      const char* s = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIPPED";
      j.push_back({{"criterion", o.id}, {"status", s}, {"title", o.title}, {"detail", o.detail},
                   {"seconds", o.seconds}});
    } else {
      out << format(o) << std::endl;
    }
  }
  if (c.json) out << j.dump(2) << '\n';
  return any_failed(all) ? 3 : 0;
#else
  (void)a;
  (void)c;
  (void)out;
  throw InputError("selftest is not available: built without the acceptance suite");
#endif
}

}  // namespace zslice::cli
