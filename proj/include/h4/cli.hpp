#pragma once

// Command dispatch for the h4 tool. run() is the whole program minus main(),
// so tests can drive it with in-memory streams.

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "h4/best.hpp"
#include "h4/corpus.hpp"
#include "h4/expansion.hpp"
#include "h4/io.hpp"
#include "h4/rosen.hpp"
#include "h4/uniform.hpp"

namespace h4::cli {

enum class Format { Text, Json, Csv };

struct RunConfig {
  std::string command;
  std::string alpha = "paper-example";
  std::string stream;
  std::uint64_t digits = 20;
  std::uint64_t max_q = 0;
  std::uint64_t count = 0;
  std::string p, q;
  bool exact = false;
  bool numeric = false;
  std::size_t window = 100;
  std::size_t records = 1000;
  std::uint64_t n_max = 500;
  unsigned i_max = 5;
  Format format = Format::Text;
  std::uint64_t seed = 1;
  std::uint64_t cap = 100000;
  std::size_t corpus_size = 100;
  long coeff_bound = 20;
  std::string prng = "mt19937_64-mod";
};

enum Exit { kOk = 0, kFailure = 1, kValidation = 2, kCap = 3 };

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::CapExceeded: return kCap;
    case ErrorKind::InvariantViolation: return kFailure;
    default: return kValidation;
  }
}

namespace detail {

inline void cap_check(std::uint64_t v, std::uint64_t cap, const char* what) {
  if (v > cap)
    throw Error(ErrorKind::CapExceeded,
                std::string(what) + " " + std::to_string(v) + " exceeds --cap-iterations " + std::to_string(cap));
}

inline Surd need_surd(const Alpha& a, const char* cmd) {
  if (const Surd* s = std::get_if<Surd>(&a)) return *s;
  throw Error(ErrorKind::ValidationError, std::string(cmd) + " needs a surd, not a digit stream");
}

inline ZRt2 parse_pair(const std::string& s, const char* flag) {
  const auto comma = s.find(',');
  Int a, b;
  if (comma == std::string::npos || a.set_str(s.substr(0, comma), 10) != 0 ||
      b.set_str(s.substr(comma + 1), 10) != 0)
    throw Error(ErrorKind::ParseError, std::string(flag) + " expects a,b for a + b√2, got '" + s + "'");
  return ZRt2(a, b);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string mpf_str(const mpf_class& x, int digits = 30) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

/// Numerator and denominator strings of (P + Q√D)/S.
inline std::pair<std::string, std::string> exact_pair(const Surd& x) {
  const auto p = x.parts();
  std::string num = p.P.str();
  if (!p.Q.is_zero()) num += " + (" + p.Q.str() + ")√(" + p.D.str() + ")";
  return {num, p.S.str()};
}

inline Walker walker_for(const Alpha& a, Int* shift) {
  if (const Surd* s = std::get_if<Surd>(&a)) {
    const Normalized nz = make_positive(*s);
    if (nz.in_qh4) throw Error(ErrorKind::InputInQH4, "α ∈ Q(H4)");
    if (shift) *shift = nz.k;
    return Walker(nz.rep);
  }
  if (shift) *shift = 0;
  return Walker(std::get<DigitStream>(a));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands.

inline int cmd_expand(const RunConfig& c, const Alpha& a, std::ostream& out) {
  detail::cap_check(c.digits, c.cap, "--digits");
  Walker w = std::holds_alternative<Surd>(a) ? Walker(std::get<Surd>(a)) : Walker(std::get<DigitStream>(a));
  const Prefix pre = expand(w, c.digits);
  auto boundary = [](Boundary b) {
    return b == Boundary::InvSqrt2 ? "1/√2" : b == Boundary::Sqrt2 ? "√2" : "0";
  };
  auto completion_str = [](const Completion& k) {
    std::string s;
    for (int d : k.word) s += std::to_string(d) + " ";
    return s + "(" + std::to_string(k.repeat) + ")^∞";
  };
  switch (c.format) {
    case Format::Text: {
      for (std::size_t i = 0; i < pre.digits.size(); ++i) out << (i ? " " : "") << pre.digits[i];
      out << "\n";
      if (pre.terminated) {
        const auto [x, y] = completions(pre.digits, *pre.terminated);
        out << "terminated at tail " << boundary(*pre.terminated) << ": " << completion_str(x) << " | "
            << completion_str(y) << "\n";
      }
      break;
    }
    case Format::Json: {
      json j{{"digits", pre.digits}, {"terminated", nullptr}};
      if (pre.terminated) {
        const auto [x, y] = completions(pre.digits, *pre.terminated);
        j["terminated"] = {{"boundary", boundary(*pre.terminated)},
                           {"completions", json::array({{{"word", x.word}, {"repeat", x.repeat}},
                                                        {{"word", y.word}, {"repeat", y.repeat}}})}};
      }
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "n,digit\n";
      for (std::size_t i = 0; i < pre.digits.size(); ++i) out << i + 1 << "," << pre.digits[i] << "\n";
      break;
  }
  return kOk;
}

inline int cmd_rosen(const RunConfig& c, const Alpha& a, bool dual, std::ostream& out) {
  detail::cap_check(c.digits, c.cap, "--digits");
  auto terms = [&](std::size_t n) {
    if (const Surd* s = std::get_if<Surd>(&a)) return dual ? dual_rosen_digits(*s, n) : rosen_digits(*s, n);
    const Walker w(std::get<DigitStream>(a));
    return dual ? dual_rosen_digits_regrouped(w, n) : rosen_digits_regrouped(w, n);
  };
  RosenExpansion e;
  std::vector<H4Fraction> conv;
  if (c.max_q > 0) {
    // Grow until a convergent passes --max-q, then cut there.
    const ZRt2 qmax(Int(static_cast<unsigned long>(c.max_q)));
    for (std::size_t n = 8;; n *= 2) {
      detail::cap_check(n, c.cap, "Rosen terms for --max-q");
      e = terms(n);
      conv = convergents(e);
      if (conv.back().q > qmax) break;
    }
    while (conv.back().q > qmax) {
      conv.pop_back();
      e.terms.pop_back();
    }
  } else {
    e = terms(c.digits);
    conv = convergents(e);
  }
  switch (c.format) {
    case Format::Text:
      out << e.str() << "\n";
      for (std::size_t i = 0; i < conv.size(); ++i) out << i << "  " << conv[i] << "\n";
      break;
    case Format::Json: {
      json terms = json::array();
      for (const auto& t : e.terms) terms.push_back({{"eps", t.eps}, {"a", to_json(t.a)}});
      json cs = json::array();
      for (const auto& f : conv) cs.push_back(to_json(f));
      out << json{{"a0", to_json(e.a0)}, {"terms", terms}, {"convergents", cs}}.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "i,eps,a,p,q\n";
      for (std::size_t i = 0; i < conv.size(); ++i) {
        const std::string eps = i == 0 ? "" : std::to_string(e.terms[i - 1].eps);
        const Int& ai = i == 0 ? e.a0 : e.terms[i - 1].a;
        out << i << "," << eps << "," << ai.get_str() << "," << conv[i].p << "," << conv[i].q << "\n";
      }
      break;
  }
  return kOk;
}

inline int cmd_best(const RunConfig& c, const Alpha& a, std::ostream& out) {
  if ((c.max_q == 0) == (c.count == 0))
    throw Error(ErrorKind::ValidationError, "best needs exactly one of --max-q and --count");
  detail::cap_check(std::max(c.max_q, c.count), c.cap, c.count ? "--count" : "--max-q");
  Int shift;
  Walker w = detail::walker_for(a, &shift);
  auto bs = c.count ? best_approximations_count(std::move(w), c.count)
                    : best_approximations(std::move(w), Int(static_cast<unsigned long>(c.max_q)), c.cap);
  for (auto& b : bs) b.frac = shift_back(b.frac, shift);
  switch (c.format) {
    case Format::Text:
      for (std::size_t i = 0; i < bs.size(); ++i) {
        const auto& b = bs[i];
        out << i << "  " << b.frac << "  " << to_string(b.side) << " n=" << b.n_first;
        if (b.n_last != b.n_first) out << ".." << b.n_last;
        out << (b.is_rosen ? "  rosen" : "") << (b.is_dual ? "  dual" : "") << "  " << to_string(b.transition)
            << "\n";
      }
      break;
    case Format::Json: {
      json arr = json::array();
      for (std::size_t i = 0; i < bs.size(); ++i) {
        const auto& b = bs[i];
        arr.push_back({{"i", i},
                       {"fraction", to_json(b.frac)},
                       {"decimal", to_decimal(Surd(b.frac.value()))},
                       {"side", to_string(b.side)},
                       {"n_first", b.n_first},
                       {"n_last", b.n_last},
                       {"rosen", b.is_rosen},
                       {"dual", b.is_dual},
                       {"transition", to_string(b.transition)}});
      }
      out << arr.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "i,p,q,family,side,n_first,n_last,rosen,dual,transition\n";
      for (std::size_t i = 0; i < bs.size(); ++i) {
        const auto& b = bs[i];
        out << i << "," << b.frac.p << "," << b.frac.q << "," << to_string(b.frac.family) << ","
            << to_string(b.side) << "," << b.n_first << "," << b.n_last << "," << b.is_rosen << "," << b.is_dual
            << "," << to_string(b.transition) << "\n";
      }
      break;
  }
  return kOk;
}

inline void print_fractions(const std::vector<H4Fraction>& fs, Format f, std::ostream& out) {
  switch (f) {
    case Format::Text:
      for (std::size_t i = 0; i < fs.size(); ++i) out << i << "  " << fs[i] << "\n";
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& x : fs) arr.push_back(to_json(x));
      out << arr.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "i,p,q,family\n";
      for (std::size_t i = 0; i < fs.size(); ++i)
        out << i << "," << fs[i].p << "," << fs[i].q << "," << to_string(fs[i].family) << "\n";
      break;
  }
}

inline int cmd_oracle(const RunConfig& c, const Alpha& a, std::ostream& out) {
  if (c.max_q == 0) throw Error(ErrorKind::ValidationError, "oracle needs --max-q");
  detail::cap_check(c.max_q, c.cap, "--max-q");
  const Surd alpha = detail::need_surd(a, "oracle");
  if (alpha.in_qh4()) throw Error(ErrorKind::InputInQH4, "α ∈ Q(H4)");
  print_fractions(oracle_best_approximations(alpha, Int(static_cast<unsigned long>(c.max_q))), c.format, out);
  return kOk;
}

inline int cmd_legendre(const RunConfig& c, const Alpha& a, std::ostream& out) {
  if (c.p.empty() || c.q.empty()) throw Error(ErrorKind::ValidationError, "legendre needs --p and --q");
  const Surd alpha = detail::need_surd(a, "legendre");
  const auto f = H4Fraction::from_pair(detail::parse_pair(c.p, "--p"), detail::parse_pair(c.q, "--q"));
  if (!f) throw Error(ErrorKind::ValidationError, "--q is zero");
  const Normalized nz = make_positive(alpha);
  if (nz.in_qh4) throw Error(ErrorKind::InputInQH4, "α ∈ Q(H4)");
  const H4Fraction shifted = shift_back(*f, Int(-nz.k));
  const LegendreClass cls = legendre_classify(nz.rep, shifted);
  const Surd se = scaled_error(alpha, *f);
  switch (c.format) {
    case Format::Text:
      out << *f << "  " << to_string(cls) << "  q²|α − p/q| = " << to_decimal(se) << "\n";
      break;
    case Format::Json:
      out << json{{"fraction", to_json(*f)}, {"class", to_string(cls)}, {"scaled_error", value_json(se)}}.dump(2)
          << "\n";
      break;
    case Format::Csv:
      out << "p,q,family,class,scaled_error_decimal\n"
          << f->p << "," << f->q << "," << to_string(f->family) << "," << to_string(cls) << ","
          << to_decimal(se) << "\n";
      break;
  }
  return kOk;
}

inline int cmd_k(const RunConfig& c, const Alpha& a, std::ostream& out) {
  if (c.exact && c.numeric) throw Error(ErrorKind::ValidationError, "--exact and --numeric are exclusive");
  detail::cap_check(c.records, c.cap, "--records");
  if (c.format == Format::Csv) {
    // The record sequence itself.
    const Surd alpha = detail::need_surd(a, "k --format csv");
    const std::size_t n = c.count ? c.count : 50;
    detail::cap_check(n, c.cap, "--count");
    out << "i,value_decimal,case,exact_num,exact_den\n";
    for (const auto& r : uniform_sequence(alpha, n)) {
      const auto [num, den] = detail::exact_pair(r.value);
      out << r.i << "," << to_decimal(r.value) << "," << to_string(r.kind) << "," << detail::csv_field(num) << ","
          << detail::csv_field(den) << "\n";
    }
    return kOk;
  }
  KResult k;
  if (c.numeric) {
    k = k_numeric(detail::walker_for(a, nullptr), c.records, c.window);
  } else if (const Surd* s = std::get_if<Surd>(&a)) {
    k = k_exact(*s, c.cap);
  } else {
    k = k_exact(std::get<DigitStream>(a));
  }
  if (c.format == Format::Json) {
    json j{{"method", to_string(k.method)}, {"certified", k.certified}, {"decimal", detail::mpf_str(k.value)}};
    if (k.exact) {
      j["exact"] = to_json(*k.exact);
      j["decimal"] = to_decimal(*k.exact);
      j["preperiod"] = k.preperiod;
      j["period"] = k.period;
      json ph = json::array();
      for (const auto& p : k.phases)
        ph.push_back({{"residue", p.residue},
                      {"side", to_string(p.side)},
                      {"case", to_string(p.transition)},
                      {"tail", value_json(p.tail)},
                      {"star_limit", value_json(p.star_limit)},
                      {"value", value_json(p.value)}});
      j["phases"] = ph;
    } else {
      j["records"] = k.records;
      j["window"] = k.window;
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (k.exact) {
    const auto [num, den] = detail::exact_pair(*k.exact);
    out << "K = (" << num << ")/" << den << "\n"
        << "  ≈ " << to_decimal(*k.exact) << "\n"
        << "method " << to_string(k.method) << ", preperiod " << k.preperiod << ", period " << k.period << "\n";
    for (const auto& p : k.phases)
      out << "  n ≡ " << p.residue << "  " << to_string(p.side) << "  " << to_string(p.transition) << "  "
          << to_decimal(p.value) << "\n";
  } else {
    out << "K ≈ " << detail::mpf_str(k.value) << "\n"
        << "method " << to_string(k.method) << " (not certified), max over records " << k.records - k.window + 1
        << ".." << k.records << "\n";
  }
  return kOk;
}

inline int cmd_dirichlet(const RunConfig& c, const Alpha& a, std::ostream& out) {
  detail::cap_check(c.n_max, c.cap, "--n-max");
  const Surd alpha = detail::need_surd(a, "dirichlet");
  const auto ws = dirichlet_sweep(alpha, Int(static_cast<unsigned long>(c.n_max)));
  const auto fails = std::count_if(ws.begin(), ws.end(), [](const DirichletWitness& w) { return !w.holds; });
  switch (c.format) {
    case Format::Text:
      for (const auto& w : ws)
        out << w.N << "  " << w.frac << "  |qα − p| = " << to_decimal(w.error, 20) << (w.holds ? "" : "  FAILS")
            << "\n";
      out << "N = 1.." << c.n_max << ": " << fails << " failures\n";
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& w : ws)
        arr.push_back({{"N", to_json(w.N)}, {"fraction", to_json(w.frac)}, {"error", value_json(w.error)},
                       {"holds", w.holds}});
      out << json{{"witnesses", arr}, {"failures", fails}}.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "N,p,q,error_decimal,holds\n";
      for (const auto& w : ws)
        out << w.N << "," << w.frac.p << "," << w.frac.q << "," << to_decimal(w.error) << "," << w.holds << "\n";
      break;
  }
  return fails ? kFailure : kOk;
}

inline int cmd_optimality(const RunConfig& c, std::ostream& out) {
  OptimalityStream which;
  if (c.stream == "A" || c.stream == "four-blocks")
    which = OptimalityStream::A;
  else if (c.stream == "B" || c.stream == "three-powers")
    which = OptimalityStream::B;
  else
    throw Error(ErrorKind::ValidationError, "optimality needs --stream A or B");
  const auto pts = optimality_check(which, c.i_max, c.cap);
  switch (c.format) {
    case Format::Text:
      for (const auto& p : pts)
        out << p.series << "  i=" << p.i << "  n=" << p.n << "  value " << detail::mpf_str(p.value, 15)
            << "  target " << detail::mpf_str(p.target, 15) << "  |Δ| " << detail::mpf_str(p.distance, 15) << "\n";
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& p : pts)
        arr.push_back({{"series", p.series},
                       {"i", p.i},
                       {"n", p.n},
                       {"tail_vs_one", p.tail_vs_one},
                       {"star_vs_one", p.star_vs_one},
                       {"value", detail::mpf_str(p.value)},
                       {"target", detail::mpf_str(p.target)},
                       {"distance", detail::mpf_str(p.distance)}});
      out << arr.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "series,i,n,value,target,distance\n";
      for (const auto& p : pts)
        out << p.series << "," << p.i << "," << p.n << "," << detail::mpf_str(p.value) << ","
            << detail::mpf_str(p.target) << "," << detail::mpf_str(p.distance) << "\n";
      break;
  }
  return kOk;
}

inline int cmd_corpus(const RunConfig& c, std::ostream& out) {
  if (c.prng != "mt19937_64-mod") throw Error(ErrorKind::ValidationError, "unknown prng '" + c.prng + "'");
  detail::cap_check(c.corpus_size, c.cap, "--corpus-size");
  const auto xs = make_corpus(c.seed, c.corpus_size, c.coeff_bound);
  switch (c.format) {
    case Format::Text:
      for (std::size_t i = 0; i < xs.size(); ++i)
        out << i << "  " << to_json(xs[i]).dump() << "  " << to_decimal(xs[i]) << "\n";
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& x : xs) arr.push_back(to_json(x));
      out << arr.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "i,surd,decimal\n";
      for (std::size_t i = 0; i < xs.size(); ++i)
        out << i << "," << detail::csv_field(to_json(xs[i]).dump()) << "," << to_decimal(xs[i]) << "\n";
      break;
  }
  return kOk;
}

inline int dispatch(const RunConfig& c, std::ostream& out) {
  if (c.command == "optimality") return cmd_optimality(c, out);
  if (c.command == "corpus") return cmd_corpus(c, out);
  Alpha a = parse_alpha(c.alpha);
  if (!c.stream.empty()) {
    if (c.stream == "A" || c.stream == "four-blocks")
      a = DigitStream::generated(DigitStream::Rule::FourBlocks);
    else if (c.stream == "B" || c.stream == "three-powers")
      a = DigitStream::generated(DigitStream::Rule::ThreePowers);
    else
      throw Error(ErrorKind::ValidationError, "unknown --stream '" + c.stream + "'");
  }
  if (c.command == "expand") return cmd_expand(c, a, out);
  if (c.command == "rosen") return cmd_rosen(c, a, false, out);
  if (c.command == "dual-rosen") return cmd_rosen(c, a, true, out);
  if (c.command == "best") return cmd_best(c, a, out);
  if (c.command == "oracle") return cmd_oracle(c, a, out);
  if (c.command == "legendre") return cmd_legendre(c, a, out);
  if (c.command == "k") return cmd_k(c, a, out);
  if (c.command == "dirichlet") return cmd_dirichlet(c, a, out);
  throw Error(ErrorKind::ValidationError, "unknown command '" + c.command + "'");
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Diophantine approximation for the Hecke group H4", "h4"};
  app.set_config("--config", "", "key = value file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  bool as_json = false, as_csv = false;
  app.add_flag("--json", as_json, "same as --format json; wins over --format");
  app.add_flag("--csv", as_csv, "same as --format csv; wins over --format");
  app.add_option("--seed", c.seed, "corpus seed");
  app.add_option("--cap-iterations", c.cap, "upper bound on digits, records and denominators")
      ->check(CLI::PositiveNumber);
  app.add_option("--corpus-size", c.corpus_size)->check(CLI::PositiveNumber);
  app.add_option("--coeff-bound", c.coeff_bound)->check(CLI::PositiveNumber);
  app.add_option("--prng", c.prng, "corpus generator; only mt19937_64-mod");
  app.add_option("--alpha", c.alpha, "surd JSON, one, paper-example or stream:<rule>");
  app.add_option("--stream", c.stream, "A | B | four-blocks | three-powers");
  app.add_option("--digits", c.digits)->check(CLI::PositiveNumber);
  app.add_option("--max-q", c.max_q)->check(CLI::PositiveNumber);
  app.add_option("--count", c.count)->check(CLI::PositiveNumber);
  app.add_option("--p", c.p, "numerator a,b = a + b√2");
  app.add_option("--q", c.q, "denominator c,d = c + d√2");
  app.add_flag("--exact", c.exact);
  app.add_flag("--numeric", c.numeric);
  app.add_option("--window", c.window)->check(CLI::PositiveNumber);
  app.add_option("--records", c.records)->check(CLI::PositiveNumber);
  app.add_option("--n-max", c.n_max)->check(CLI::PositiveNumber);
  app.add_option("--i-max", c.i_max)->check(CLI::PositiveNumber);

  for (const char* name : {"expand", "rosen", "dual-rosen", "best", "oracle", "legendre", "k", "dirichlet",
                           "optimality", "corpus"}) {
    app.add_subcommand(name)->callback([&c, name] { c.command = name; });
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "h4: " << e.what() << "\n";
    return kValidation;
  }
  if (as_json) format = "json";
  if (as_csv) format = "csv";
  c.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

  try {
    return dispatch(c, out);
  } catch (const Terminated& e) {
    err << "h4: " << e.what() << "\n";
    return kValidation;
  } catch (const Error& e) {
    err << "h4: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace h4::cli
