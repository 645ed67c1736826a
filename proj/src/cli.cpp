#include "supercert/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "supercert/certifier.hpp"
#include "supercert/errors.hpp"
#include "supercert/group_oracle.hpp"

namespace supercert {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read input file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("input file '" + path + "' is not valid JSON: " + e.what());
  }
}

unsigned thread_override() {
  if (const char* t = std::getenv("SUPERCERT_THREADS")) {
    const long v = std::strtol(t, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write output file '" + path + "'");
  f << text;
}

std::string list(const std::vector<long>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
  return s + "]";
}

struct InputFlags {
  std::string input;
  std::string output;
  std::vector<std::string> hints;
  long long budget = -1;
  long witness_bound = -1;
};

CertifyInput load(const InputFlags& fl) {
  CertifyInput in = parse_certify_input(read_json(fl.input));
  for (const auto& h : fl.hints) {
    try {
      in.options.hints.emplace_back(h);
    } catch (const std::invalid_argument&) {
      throw UsageError("--hint must be a decimal integer, got '" + h + "'");
    }
  }
  if (fl.budget >= 0) in.options.budget = static_cast<std::uint64_t>(fl.budget);
  if (fl.witness_bound >= 0) in.options.witness_bound = fl.witness_bound;
  in.options.threads = thread_override();
  return in;
}

void add_input_flags(CLI::App* sub, InputFlags& fl, bool with_output) {
  sub->add_option("input", fl.input, "JSON input with r, coeffs and optional hints, budget, witness_bound")
      ->required();
  sub->add_option("--hint", fl.hints, "Extra prime hint for the discriminant norm (repeatable)");
  sub->add_option("--budget", fl.budget, "Rho iteration budget");
  if (with_output) sub->add_option("-o,--output", fl.output, "Write to this file instead of stdout");
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certifier for large Galois images of superelliptic Jacobians y^r = f(x)", "supercert"};
  app.require_subcommand(1);

  InputFlags cert_flags, poly_flags, inertia_flags, disc_flags;
  std::string poly_place, inertia_place;
  long r = 0, d = 0, n = 1, ell = 0;
  std::string pool_text;

  auto* certify_cmd = app.add_subcommand("certify", "Run every check and print the certificate as JSON");
  add_input_flags(certify_cmd, cert_flags, true);
  certify_cmd->add_option("--witness-bound", cert_flags.witness_bound, "Search witness places above primes up to this bound");

  auto* polygon_cmd = app.add_subcommand("polygon", "Newton polygon and detected v-degree at one place");
  add_input_flags(polygon_cmd, poly_flags, false);
  polygon_cmd->add_option("--place", poly_place, "Place as p:k, e.g. 7:0")->required();

  auto* inertia_cmd = app.add_subcommand("inertia", "Inertia decomposition at one place");
  add_input_flags(inertia_cmd, inertia_flags, false);
  inertia_cmd->add_option("--place", inertia_place, "Place as p:k, e.g. 7:0")->required();

  auto* disc_cmd = app.add_subcommand("disc", "Discriminant and the factorisation of its norm");
  add_input_flags(disc_cmd, disc_flags, false);

  auto* mj_cmd = app.add_subcommand("mj", "Exponents m_1, ..., m_{r-1}");
  mj_cmd->add_option("--r", r, "Odd prime r")->required();
  mj_cmd->add_option("--d", d, "Degree d")->required();

  auto* du_cmd = app.add_subcommand("du-classes", "Congruence classes of ell with a DU image");
  du_cmd->add_option("--r", r, "Odd prime r")->required();
  du_cmd->add_option("--d", d, "Degree d, a multiple of 2r")->required();

  auto* gv_cmd = app.add_subcommand("group-verify", "Centraliser of zeta_r in Sp: closed form against enumeration");
  gv_cmd->add_option("--r", r, "Odd prime r")->required();
  gv_cmd->add_option("--n", n, "Number of copies of the r - 1 dimensional block")->required();
  gv_cmd->add_option("--ell", ell, "Prime ell different from r")->required();

  auto* search_cmd = app.add_subcommand("search", "Template polynomials from a prime pool");
  search_cmd->add_option("--r", r, "Odd prime r")->required();
  search_cmd->add_option("--d", d, "Degree d, a multiple of 2r")->required();
  search_cmd->add_option("--pool", pool_text, "Comma-separated primes, e.g. 2,7,29")->required();

  std::vector<std::string> rev(argv.rbegin(), argv.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (certify_cmd->parsed()) {
      const CertifyInput in = load(cert_flags);
      const Certificate c = certify(in.r, in.f, in.options);
      emit(to_json(c).dump(2) + "\n", cert_flags.output, out);
      if (!c.valid) {
        err << "certificate invalid: " << c.failure << "\n";
        return kExitInvalid;
      }
      return kExitOk;
    }
    if (polygon_cmd->parsed() || inertia_cmd->parsed()) {
      const bool polygon = polygon_cmd->parsed();
      const CertifyInput in = load(polygon ? poly_flags : inertia_flags);
      const Place place = place_from_name(in.r, polygon ? poly_place : inertia_place);
      const auto prof = place.ramified ? std::nullopt : detect_v_profile(in.f, place);
      if (polygon) {
        out << "place " << place.name() << " residue_degree " << place.i << "\n";
        out << "polygon " << newton_polygon(in.f, place).to_string() << "\n";
        if (!prof) {
          out << "profile none\n";
          return kExitOk;
        }
        out << "profile " << (prof->kind == ProfileKind::kTransvection ? "transvection" : "standard") << " qs "
            << list(prof->qs) << " hs " << list(prof->hs) << " shift " << prof->shift_origin << "\n";
        out << "shifted_polygon " << prof->polygon.to_string() << "\n";
        return kExitOk;
      }
      if (!prof) throw UsageError("no v-degree at " + place.name() + "; nothing to decompose");
      if (prof->kind == ProfileKind::kTransvection) {
        TransvectionInfo info;
        transvection_shape_check(in.f, place, in.r, &info);
        out << "transvection h " << info.h << " nontrivial_eigenvalues " << info.nontrivial_eigenvalues << "\n";
        return kExitOk;
      }
      const InertiaDecomp dec = inertia_decomposition(*prof, in.r);
      out << "qs " << list(dec.qs) << " hs " << list(dec.hs) << " xs " << list(dec.xs) << "\n";
      for (const auto& t : dec.tensor)
        out << "tensor s=" << t.s << " q=" << t.q << " D=" << t.q_exponent << " delta=" << t.delta
            << " r_exponent=" << t.r_exponent << "\n";
      for (const auto& b : dec.extra) out << "r_block s=" << b.s << " delta=" << b.delta << " mult=" << b.multiplicity << "\n";
      for (const auto& b : dec.toric)
        out << "toric s=" << b.s << " height=" << b.height << " mult=" << b.multiplicity << "\n";
      out << "trivial " << dec.trivial_multiplicity << "\n";
      out << "ab_dimension " << dec.ab_dimension() << " toric_dimension " << dec.toric_dimension()
          << " expected " << dec.expected_dimension() << " genus " << dec.genus << "\n";
      return kExitOk;
    }
    if (disc_cmd->parsed()) {
      const CertifyInput in = load(disc_flags);
      const CycElt disc = discriminant(in.f);
      const Int nm = abs(norm(disc));
      out << "discriminant " << to_string(disc) << "\n";
      out << "norm " << to_string(nm) << "\n";
      if (nm == 0) return kExitOk;
      const auto fac = factor(nm, in.options.budget, in.options.hints);
      for (const auto& pp : fac.factors)
        out << "factor " << to_string(pp.prime) << "^" << pp.exponent << " " << to_string(pp.source) << "\n";
      if (!fac.complete()) {
        out << "cofactor " << to_string(fac.cofactor) << " unresolved\n";
        return kExitInvalid;
      }
      return kExitOk;
    }
    if (mj_cmd->parsed()) {
      require_supported_order(static_cast<unsigned>(r));
      out << "m = " << list(m_exponents(static_cast<unsigned>(r), d)) << "\n";
      return kExitOk;
    }
    if (du_cmd->parsed()) {
      require_supported_order(static_cast<unsigned>(r));
      out << du_congruence_classes(static_cast<unsigned>(r), d).describe() << "\n";
      return kExitOk;
    }
    if (gv_cmd->parsed()) {
      if (ell < 3 || ell > (1 << 20) || !is_small_prime(static_cast<std::uint64_t>(ell)))
        throw UsageError("--ell must be an odd prime");
      if (n < 1) throw UsageError("--n must be positive");
      require_supported_order(static_cast<unsigned>(r));
      GfScope scope(std::make_shared<GfContext>(static_cast<std::uint32_t>(ell), 1));
      const auto zeta = build_zeta_element(static_cast<unsigned>(r), static_cast<unsigned>(n));
      const auto expected = expected_sp_centralizer_order(static_cast<unsigned>(r), static_cast<unsigned>(n),
                                                          static_cast<std::uint32_t>(ell));
      const auto t0 = std::chrono::steady_clock::now();
      const auto count = centralizer_order(zeta, CentralizerGroup::kSp, thread_override());
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out << "r " << r << " n " << n << " ell " << ell << " dimension " << zeta.matrix.rows() << "\n";
      out << "expected " << expected << "\n";
      out << "enumerated " << count.order << " (commutant dimension " << count.commutant_dimension << ", "
          << count.candidates << " candidates, " << secs << " s)\n";
      out << (expected == count.order ? "match" : "MISMATCH") << "\n";
      return expected == count.order ? kExitOk : kExitInvalid;
    }
    if (search_cmd->parsed()) {
      std::vector<Int> pool;
      std::stringstream ss(pool_text);
      for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        try {
          pool.emplace_back(item);
        } catch (const std::invalid_argument&) {
          throw UsageError("--pool entries must be integers, got '" + item + "'");
        }
      }
      for (const auto& f : search_template(static_cast<unsigned>(r), d, pool)) {
        CertifyInput in;
        in.r = static_cast<unsigned>(r);
        in.f = f;
        nlohmann::json j = to_json(in);
        j.erase("hints");
        j.erase("budget");
        j.erase("witness_bound");
        out << j.dump() << "\n";
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace supercert
