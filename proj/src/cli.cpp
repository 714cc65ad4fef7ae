#include "pqsurf/cli.hpp"

#include "pqsurf/basket.hpp"
#include "pqsurf/classify.hpp"
#include "pqsurf/error.hpp"
#include "pqsurf/minimality.hpp"
#include "pqsurf/serialize.hpp"
#include "pqsurf/signature.hpp"
#include "pqsurf/singularity.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace pqsurf::cli {

using nlohmann::json;

namespace {

std::string join_ints(const std::vector<int> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << text;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s)
    out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string csv_from_report(const json &report) {
  std::string out = "K2,SingX,t1,t2,G\n";
  for (const auto &s : report.at("surfaces"))
    out += s.at("K2").get<std::string>() + "," + csv_field(s.at("basket").get<std::string>()) + "," +
           csv_field(s.at("t1").get<std::string>()) + "," + csv_field(s.at("t2").get<std::string>()) +
           "," + csv_field(s.at("group_id").get<std::string>()) + "\n";
  return out;
}

void print_report(const json &r, std::ostream &out) {
  const auto &p = r.at("parameters");
  out << "pg=" << p.at("pg") << " q=" << p.at("q") << " gamma=" << p.at("gamma")
      << " max-mult=" << p.at("max_mult") << " mult-ceiling=" << p.at("mult_ceiling")
      << (p.at("exhaustive_in_mult").get<bool>() ? " (exhaustive in M)" : " (not exhaustive in M)")
      << "\n";
  out << "catalog=" << p.at("catalog_digest").get<std::string>() << "\n";
  const auto &c = r.at("counts");
  out << "baskets: " << c.at("baskets") << ", triples: " << c.at("triples") << "\n";
  out << "surfaces: " << r.at("surfaces").size() << "\n";
  for (const auto &s : r.at("surfaces")) {
    out << "  K2=" << s.at("K2").get<std::string>() << " basket={" << s.at("basket").get<std::string>()
        << "} t1=(" << s.at("t1").get<std::string>() << ") t2=(" << s.at("t2").get<std::string>()
        << ") G=" << s.at("group_id").get<std::string>() << " |G|=" << s.at("group").at("order")
        << " dedup=" << s.at("dedup").get<std::string>();
    if (s.contains("minimality"))
      out << " minimality=" << s["minimality"].at("verdict").get<std::string>();
    out << "\n";
  }
  out << "skipped: " << r.at("skipped").size() << "\n";
  for (const auto &k : r.at("skipped")) {
    out << "  order=" << k.at("order") << " t1=(" << k.at("t1").get<std::string>() << ") t2=("
        << k.at("t2").get<std::string>() << ") reason=" << k.at("reason").get<std::string>();
    if (k.contains("group"))
      out << " group=" << k["group"].get<std::string>();
    out << "\n";
  }
}

void print_invariants(const ProductQuotientSurface &s, std::ostream &out) {
  const auto &v = s.invariants;
  out << "G=" << s.group->label() << " t1=(" << s.v1.signature.short_str() << ") t2=("
      << s.v2.signature.short_str() << ") v1=" << s.v1.str() << " v2=" << s.v2.str() << "\n";
  out << "  basket={" << s.basket.str() << "} K2=" << to_string(v.K2) << " chi=" << to_string(v.chi)
      << " pg=" << v.pg << " q=" << v.q << " gamma=" << to_string(v.gamma) << " l=" << v.l
      << " mu=" << to_string(v.mu) << " xi=" << to_string(v.xi) << " I=" << v.index
      << " tau=" << to_string(v.tau) << " e=" << to_string(v.e_top) << "\n";
}

std::set<long> parse_orders(const std::string &text) {
  std::set<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size() || v < 1)
        throw std::invalid_argument(item);
      out.insert(v);
    } catch (const std::exception &) {
      throw CLI::ValidationError("--orders", "expected a comma separated list of positive integers");
    }
  }
  return out;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Product-quotient surface classifier"};
  app.name("pqc");
  app.require_subcommand(1);

  std::string sing_text;
  auto *sing = app.add_subcommand("sing", "Invariants of a cyclic quotient singularity q/n");
  sing->add_option("type", sing_text, "q/n")->required();

  auto *basket = app.add_subcommand("basket", "Basket operations");
  basket->require_subcommand(1);
  std::string basket_text;
  auto *binv = basket->add_subcommand("invariants", "Invariants of a basket");
  binv->add_option("basket", basket_text, "e.g. 2x1/2,1/6,5/6")->required();
  int chi = 1, bgamma = 0, bmax = 0;
  bool regular = false;
  auto *benum = basket->add_subcommand("enumerate", "Admissible baskets with given chi and gamma");
  benum->add_option("--chi", chi)->required();
  benum->add_option("--gamma", bgamma)->required();
  benum->add_option("--max-mult", bmax)->required()->check(CLI::Range(2, 1000));
  benum->add_flag("--regular", regular, "require gamma + chi - 1 >= 0");

  auto *sigs = app.add_subcommand("signatures", "Signature operations");
  sigs->require_subcommand(1);
  std::string xi_text, sig_basket;
  int g0 = 0;
  bool gamma_nonzero = false;
  auto *senum = sigs->add_subcommand("enumerate", "Signatures compatible with xi");
  senum->add_option("--xi", xi_text)->required();
  senum->add_option("--basket", sig_basket);
  senum->add_option("--g0", g0)->check(CLI::Range(0, 20));
  senum->add_flag("--gamma-nonzero", gamma_nonzero);

  auto *classify = app.add_subcommand("classify", "Run the regular classification pipeline");
  int pg = 0, cgamma = 0, cmax = 0, jobs = 1;
  std::string catalog_path, orders_text, json_out, csv_out, cache_dir;
  bool builtin = false, deterministic = false, no_minimality = false;
  long aut_budget = 1'000'000;
  classify->add_option("--pg", pg)->required()->check(CLI::NonNegativeNumber);
  classify->add_option("--gamma", cgamma)->required();
  classify->add_option("--max-mult", cmax)->required()->check(CLI::Range(2, 1000));
  classify->add_option("--catalog", catalog_path, "catalog file (omit for an empty catalog)");
  classify->add_option("--orders", orders_text, "restrict to these group orders, e.g. 5,25");
  classify->add_option("--json", json_out, "write the report as JSON");
  classify->add_option("--csv", csv_out, "write K2,SingX,t1,t2,G rows");
  classify->add_option("--cache-dir", cache_dir);
  classify->add_option("--jobs", jobs)->check(CLI::Range(1, 256));
  classify->add_option("--aut-budget", aut_budget)->check(CLI::PositiveNumber);
  classify->add_flag("--builtin-abelian", builtin, "add built-in abelian groups missing from the catalog");
  classify->add_flag("--deterministic", deterministic, "omit timing from the JSON output");
  classify->add_flag("--no-minimality", no_minimality);

  std::string dual_in, dual_json;
  auto *dual = app.add_subcommand("dual", "Dual surfaces of stored surfaces");
  dual->add_option("--in", dual_in)->required();
  dual->add_option("--json", dual_json);

  std::string min_in;
  bool min_systems = false;
  auto *minimality = app.add_subcommand("minimality", "(-1)-curve diagnostics for stored surfaces");
  minimality->add_option("--in", min_in)->required();
  minimality->add_flag("--systems", min_systems, "print every (mu1 + mu2, mu1 mu2) system");

  std::string fixtures;
  auto *verify = app.add_subcommand("verify-tables", "Consistency checks on the table fixtures");
  verify->add_option("--fixtures", fixtures)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sing) {
      auto t = SingularityType::parse(sing_text);
      auto inv = sing_invariants(t);
      std::string hj;
      for (std::size_t i = 0; i < inv.hj.size(); ++i)
        hj += (i ? "," : "") + std::to_string(inv.hj[i]);
      out << "l=" << inv.l << " gamma=" << to_string(inv.gamma) << " mu=" << to_string(inv.mu)
          << " I=" << inv.index << " hj=[" << hj << "]\n";
    } else if (*binv) {
      auto b = Basket::parse(basket_text);
      auto bi = basket_invariants(b);
      auto adm = basket_admissible(b);
      out << "basket={" << b.str() << "} points=" << b.size() << " l=" << bi.l
          << " gamma=" << to_string(bi.gamma) << " mu=" << to_string(bi.mu) << " I=" << bi.index
          << " admissible=" << (adm.admissible ? "yes" : "no") << "\n";
    } else if (*benum) {
      auto list = enumerate_baskets(chi, Rational(bgamma), bmax, regular);
      for (const auto &b : list)
        out << (b.empty() ? "{}" : b.str()) << "\n";
      out << "count: " << list.size() << "\n";
    } else if (*senum) {
      Rational xi = parse_rational(xi_text);
      std::vector<Signature> list;
      if (sig_basket.empty())
        list = signature_candidates(xi, g0);
      else
        list = enumerate_signatures(xi, Basket::parse(sig_basket), g0, gamma_nonzero);
      for (const auto &s : list)
        out << s.str() << "\n";
      out << "count: " << list.size() << "\n";
    } else if (*classify) {
      ClassifyOptions opt;
      if (!orders_text.empty())
        opt.orders = parse_orders(orders_text);
      opt.builtin_abelian = builtin;
      opt.jobs = jobs;
      opt.aut_budget = aut_budget;
      opt.run_minimality = !no_minimality;
      GroupCatalog catalog;
      if (!catalog_path.empty())
        catalog = load_catalog(catalog_path);
      else
        catalog.refresh_digest();

      json doc;
      std::filesystem::path cache_file;
      const std::string key =
          cache_key(pg, cgamma, cmax, catalog.digest(), options_flags(opt));
      if (!cache_dir.empty()) {
        cache_file = std::filesystem::path(cache_dir) / ("pqc-" + key + ".json");
        if (std::filesystem::exists(cache_file)) {
          json cached = read_json(cache_file.string());
          if (cached.value("cache_key", "") == key) {
            doc = std::move(cached["report"]);
            err << "cache hit: " << cache_file.string() << "\n";
          }
        }
      }
      if (doc.is_null()) {
        auto report = existing_surfaces(pg, cgamma, cmax, catalog, opt);
        doc = report_to_json(report, deterministic);
        if (!cache_file.empty()) {
          std::filesystem::create_directories(cache_dir);
          json entry = {{"cache_key", key}, {"report", report_to_json(report, true)}};
          write_text(cache_file.string(), entry.dump(1) + "\n");
        }
      }
      print_report(doc, out);
      if (!json_out.empty())
        write_text(json_out, doc.dump(1) + "\n");
      if (!csv_out.empty())
        write_text(csv_out, csv_from_report(doc));
    } else if (*dual) {
      json docs = json::array();
      for (const auto &s : surfaces_from_document(read_json(dual_in))) {
        auto d = dual_surface(s);
        print_invariants(d, out);
        docs.push_back(surface_to_json(d));
      }
      if (!dual_json.empty())
        write_text(dual_json, docs.dump(1) + "\n");
    } else if (*minimality) {
      for (const auto &s : surfaces_from_document(read_json(min_in))) {
        auto search = search_minus_one(s, {}, min_systems);
        auto verdict = minimality_verdict(s.basket, search);
        out << "G=" << s.group->label() << " basket={" << s.basket.str() << "} K2="
            << to_string(s.invariants.K2) << " verdict=" << to_string(verdict)
            << " applicability=" << search.applicability
            << " e-vectors=" << search.e_vectors_visited << (search.truncated ? " (truncated)" : "")
            << " candidates=" << search.candidates.size() << "\n";
        for (const auto &c : search.candidates)
          out << "  mu=(" << c.mu1 << "," << c.mu2 << ") e=(" << join_ints(c.e) << ")\n";
        if (min_systems)
          for (const auto &sys : search.systems)
            out << "  e=(" << join_ints(sys.e) << ") linear=" << to_string(sys.linear)
                << " product=" << to_string(sys.product) << " solutions=" << sys.solutions.size()
                << "\n";
      }
    } else if (*verify) {
      auto rows = load_table_fixtures(fixtures);
      int pass = 0, flagged = 0, unexpected = 0;
      for (const auto &row : rows) {
        auto d = verify_table_row(row);
        (d.pass ? pass : flagged)++;
        const bool as_expected = d.pass == (row.expected == "pass");
        if (!as_expected)
          ++unexpected;
        if (!d.pass || !as_expected) {
          out << (as_expected ? "flagged" : "UNEXPECTED") << " " << row.table << " line " << row.line
              << ": basket={" << row.basket << "} t1=(" << row.t1 << ") t2=(" << row.t2 << ") G="
              << row.group << "\n";
          for (const auto &i : d.issues)
            out << "    " << i << "\n";
        }
      }
      out << "rows: " << rows.size() << ", pass: " << pass << ", flagged: " << flagged
          << ", unexpected: " << unexpected << "\n";
      return unexpected == 0 ? kExitOk : kExitDomain;
    }
  } catch (const Error &e) {
    err << e.what() << "\n";
    return kExitDomain;
  } catch (const CLI::ValidationError &e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error &e) {
    err << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

} // namespace pqsurf::cli
