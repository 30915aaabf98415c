#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "cotwin/catalog.hpp"
#include "cotwin/codistance.hpp"
#include "cotwin/errors.hpp"
#include "cotwin/homotopy.hpp"
#include "cotwin/io.hpp"
#include "cotwin/twinner.hpp"

namespace cotwin::cli {

namespace fs = std::filesystem;

namespace {

const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Violation:
    case Errc::BuildingInvalid:
      return kViolation;
    case Errc::HomotopyInconclusive:
    case Errc::CapExceeded:
    case Errc::Overflow:
      return kInconclusive;
    default:
      return kInputError;
  }
}

std::string set_str(GenSet J, const CoxeterMatrix& M) {
  std::string out = "{";
  for (int s : members(J)) out += (out.size() > 1 ? "," : "") + M.gens()[s];
  return out + "}";
}

std::string chamber_list(const std::vector<Chamber>& cs) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? " " : "") + std::to_string(cs[i]);
  return out;
}

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

BuildingPtr load_building(const std::string& path) { return read_building(read_text_file(path)); }

Codistance load_codistance(const std::string& path, const BuildingPtr& b, std::ostream& err) {
  std::vector<std::string> warnings;
  Codistance f = read_codistance(read_text_file(path), b, &warnings);
  for (const auto& w : warnings) err << "warning: " << path << ": " << w << '\n';
  return f;
}

std::string local_verdict(const LocalReport& r) {
  if (r.vacuous) return "vacuous";
  switch (r.overall) {
    case Verdict::ProvenTrivial:
      return "pass";
    case Verdict::ProvenNontrivial:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

// ---------------------------------------------------------------------------
// Commands.

struct GenOptions {
  std::string family;
  int q = 2;
  int a = 2;
  int b = 2;
  std::string type = "A2";
  std::string left, right, output;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  BuildingPtr b;
  if (o.family == "thin") {
    b = gen_thin(CoxeterMatrix::of_type(o.type), "thin_" + o.type);
  } else if (o.family == "digon") {
    b = gen_digon(o.a, o.b);
  } else if (o.family == "pg2") {
    b = gen_pg2(o.q);
  } else if (o.family == "pg3") {
    b = gen_pg3(o.q);
  } else if (o.family == "sp4") {
    b = gen_sp4(o.q);
  } else {
    if (o.left.empty() || o.right.empty()) throw Error(Errc::Parse, "product needs --left and --right");
    b = product(*load_building(o.left), *load_building(o.right));
  }
  emit(out, write_building(*b), o.output);
  return kPass;
}

int cmd_validate_building(const std::string& path, std::ostream& out) {
  const std::string text = read_text_file(path);
  BuildingPtr b;
  try {
    b = read_building(text);
  } catch (const Error& e) {
    if (e.code() != Errc::InvalidChamberSystem && e.code() != Errc::Disconnected) throw;
    out << "chamber system rejected: " << e.what() << "\nRESULT=fail\n";
    return kViolation;
  }
  const auto rep = validate_building(*b);
  out << "building " << b->name() << ": " << b->size() << " chambers, rank " << b->rank() << '\n';
  if (!rep.ok) {
    out << "violation of " << rep.axiom << " at chambers " << chamber_list(rep.witness) << ": " << rep.detail << '\n';
  }
  out << "RESULT=" << pass_fail(rep.ok) << '\n';
  return rep.ok ? kPass : kViolation;
}

int cmd_validate_codistance(const std::string& path, const std::string& building, std::ostream& out,
                            std::ostream& err) {
  const auto b = load_building(building);
  const Codistance f = load_codistance(path, b, err);
  const auto rep = validate_codistance(f);
  if (!rep.ok) {
    out << "panel axiom fails on the " << b->weyl().matrix().gens()[members(rep.panel.type).front()]
        << "-panel " << chamber_list(b->members(rep.panel)) << ": " << rep.detail << '\n';
  }
  out << "FOP_SIZE=" << fop(f).size() << '\n';
  out << "RESULT=" << pass_fail(rep.ok) << '\n';
  return rep.ok ? kPass : kViolation;
}

int cmd_codist_from_opposite(const std::string& building, Chamber c, const std::string& output, std::ostream& out) {
  const auto b = load_building(building);
  if (c >= b->size()) throw Error(Errc::Parse, "chamber " + std::to_string(c) + " out of range");
  emit(out, write_codistance(from_opposite_chamber(b, c)), output);
  return kPass;
}

int cmd_check(const std::string& kind, const std::string& building, std::ostream& out) {
  const auto b = load_building(building);
  const LocalReport r = kind == "lco" ? check_lco(*b) : check_lsco(*b);
  const CoxeterMatrix& M = b->weyl().matrix();
  out << kind << " on " << b->name() << ": " << r.checked << " (residue, chamber) pairs checked\n";
  for (const auto& fl : r.failures) {
    out << "witness: residue " << set_str(fl.residue.type, M) << " #" << fl.residue.index << " (chambers "
        << chamber_list(b->members(fl.residue)) << "), chamber " << fl.chamber << ": " << to_string(fl.verdict)
        << (fl.detail.empty() ? "" : " (" + fl.detail + ")") << '\n';
  }
  const std::string v = local_verdict(r);
  out << (kind == "lco" ? "LCO=" : "LSCO=") << v << '\n';
  out << "RESULT=" << (v == "vacuous" ? "pass" : v) << '\n';
  if (v == "fail") return kViolation;
  if (v == "inconclusive") return kInconclusive;
  return kPass;
}

int cmd_fop(const std::string& codistance, const std::string& building, std::ostream& out, std::ostream& err) {
  const auto b = load_building(building);
  const Codistance f = load_codistance(codistance, b, err);
  if (const auto rep = validate_codistance(f); !rep.ok) {
    out << "not a codistance: " << rep.detail << "\nRESULT=fail\n";
    return kViolation;
  }
  const auto opp = fop(f);
  const bool conn = connected(*b, opp, b->all_gens());
  out << "fop: " << chamber_list(opp) << '\n';
  out << "connected: " << (conn ? "yes" : "no") << '\n';
  out << "FOP_SIZE=" << opp.size() << '\n';
  if (!conn) {
    out << "RESULT=fail\n";
    return kViolation;
  }
  const auto v = simply_2_connected(*b, opp);
  out << "simply 2-connected: " << to_string(v.status) << " (" << v.certificate << ")\n";
  switch (v.status) {
    case Verdict::ProvenTrivial:
      out << "RESULT=pass\n";
      return kPass;
    case Verdict::ProvenNontrivial:
      out << "RESULT=fail\n";
      return kViolation;
    case Verdict::Inconclusive:
      break;
  }
  out << "RESULT=inconclusive\n";
  return kInconclusive;
}

int cmd_weyl(const std::string& building, const std::string& type, std::ostream& out) {
  std::optional<WeylTable> own;
  BuildingPtr b;
  const WeylTable* W = nullptr;
  if (!building.empty()) {
    b = load_building(building);
    W = &b->weyl();
  } else {
    own.emplace(enumerate_weyl(CoxeterMatrix::of_type(type)));
    W = &*own;
  }
  out << "order " << W->size() << '\n';
  const auto hist = W->length_histogram();
  out << "lengths";
  for (auto h : hist) out << ' ' << h;
  out << "\nlongest " << format_word(*W, W->longest_element((GenSet{1} << W->rank()) - 1), "-")
      << '\n';
  out << "RESULT=pass\n";
  return kPass;
}

// ---------------------------------------------------------------------------
// Twin directories.

std::string member_name(std::size_t i, std::size_t n) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::max<std::size_t>(4, std::to_string(n ? n - 1 : 0).size());
  return "member_" + std::string(width - std::min(width, digits.size()), '0') + digits + ".cod";
}

std::string deltastar_table(const CodistanceAtlas& atlas) {
  const Building& b = *atlas.building;
  std::ostringstream out;
  out << "%deltastar 1\n";
  for (Chamber c = 0; c < b.size(); ++c) {
    for (std::size_t g = 0; g < atlas.size(); ++g) {
      out << c << ' ' << g << ' ' << format_word(b.weyl(), atlas.members[g](c), "-") << '\n';
    }
  }
  out << "end\n";
  return out.str();
}

struct Hypotheses {
  std::string lco, lsco;
};

Hypotheses hypotheses(const Building& b) {
  return {local_verdict(check_lco(b)), local_verdict(check_lsco(b))};
}

void describe_checks(const TwinAssembly& twin, std::ostream& out) {
  for (const auto& c : twin.checks) {
    out << "check " << c.name << ": " << pass_fail(c.ok) << " (" << c.instances << " instances)";
    if (!c.ok) out << " first failure: " << c.detail;
    out << '\n';
  }
}

bool axioms_ok(const TwinAssembly& twin) {
  for (const char* name : {"Tw1", "Tw2", "Tw3"}) {
    const auto* c = twin.check(name);
    if (!c || !c->ok) return false;
  }
  return true;
}

bool seed_matches(const TwinAssembly& twin, const Codistance& seed) {
  const auto* c = twin.check("seed");
  if (!c || !c->ok) return false;
  const Building& b = *twin.minus;
  for (Chamber x = 0; x < b.size(); ++x) {
    if (twin.costar(twin.atlas.origin, x) != seed(x)) return false;
  }
  return true;
}

int cmd_twin_build(const std::string& building, const std::string& codistance, const std::string& dir,
                   std::size_t cap, std::ostream& out, std::ostream& err) {
  const auto b = load_building(building);
  const Codistance f = load_codistance(codistance, b, err);
  if (const auto rep = validate_codistance(f); !rep.ok) {
    err << "error: input is not a codistance: " << rep.detail << '\n';
    return kViolation;
  }
  fs::create_directories(fs::path(dir) / "members");
  for (const auto& entry : fs::directory_iterator(fs::path(dir) / "members")) {
    const auto name = entry.path().filename().string();
    if (name.rfind("member_", 0) == 0 && entry.path().extension() == ".cod") fs::remove(entry.path());
  }
  write_text_file(fs::path(dir) / "minus.bld", write_building(*b));
  write_text_file(fs::path(dir) / "seed.cod", write_codistance(f));

  const Hypotheses hyp = hypotheses(*b);
  std::ostringstream report;
  report << "twin build\n";
  report << "building " << b->name() << ": " << b->size() << " chambers, rank " << b->rank() << '\n';
  report << "hypotheses: lco " << hyp.lco << ", lsco " << hyp.lsco << '\n';
  const std::size_t fop_size = fop(f).size();

  auto finish = [&](const std::string& result, const std::string& atlas_size, const std::string& axioms,
                    const std::string& seed) {
    report << "RESULT=" << result << '\n'
           << "ATLAS_SIZE=" << atlas_size << '\n'
           << "FOP_SIZE=" << fop_size << '\n'
           << "LCO=" << hyp.lco << '\n'
           << "LSCO=" << hyp.lsco << '\n'
           << "TW_AXIOMS=" << axioms << '\n'
           << "SEED_MATCH=" << seed << '\n';
    write_text_file(fs::path(dir) / "report.txt", report.str());
    out << report.str();
  };

  AtlasLimits limits;
  limits.cap = cap;
  std::optional<TwinAssembly> twin;
  try {
    twin.emplace(assemble_twin(atlas_component(f, limits)));
  } catch (const Error& e) {
    report << "construction stopped: " << e.what() << '\n';
    const int code = exit_code_for(e.code());
    finish(code == kInconclusive ? "inconclusive" : "fail", "-", "-", "-");
    return code == kInputError ? kViolation : code;
  }

  const CodistanceAtlas& atlas = twin->atlas;
  write_text_file(fs::path(dir) / "plus.bld", write_building(*twin->plus));
  for (std::size_t g = 0; g < atlas.size(); ++g) {
    write_text_file(fs::path(dir) / "members" / member_name(g, atlas.size()), write_codistance(atlas.members[g]));
  }
  write_text_file(fs::path(dir) / "deltastar.txt", deltastar_table(atlas));

  report << "atlas: " << atlas.size() << " codistances\n";
  describe_checks(*twin, report);
  const bool ok = twin->ok();
  finish(pass_fail(ok), std::to_string(atlas.size()), pass_fail(axioms_ok(*twin)), pass_fail(seed_matches(*twin, f)));
  return ok ? kPass : kViolation;
}

int cmd_twin_verify(const std::string& dir, std::size_t cap, std::ostream& out, std::ostream& err) {
  const fs::path root(dir);
  const auto minus = load_building((root / "minus.bld").string());
  const auto plus = load_building((root / "plus.bld").string());
  const Codistance seed = load_codistance((root / "seed.cod").string(), minus, err);
  if (plus->size() == 0 || plus->weyl().matrix() != minus->weyl().matrix()) {
    throw Error(Errc::BuildingMismatch, "plus.bld and minus.bld have different types");
  }
  std::vector<Codistance> members;
  for (std::size_t g = 0; g < plus->size(); ++g) {
    members.push_back(load_codistance((root / "members" / member_name(g, plus->size())).string(), minus, err));
  }
  std::vector<Building::PanelList> panels(plus->rank());
  for (int s = 0; s < plus->rank(); ++s) {
    for (std::uint32_t i = 0; i < plus->panel_count(s); ++i) panels[s].push_back(plus->panel_members(s, i));
  }

  std::ostringstream report;
  report << "twin verify " << dir << '\n';
  bool stored_ok = true;
  for (std::size_t g = 0; g < members.size(); ++g) {
    if (const auto rep = validate_codistance(members[g]); !rep.ok) {
      report << "member " << g << " is not a codistance: " << rep.detail << '\n';
      stored_ok = false;
    }
  }
  {
    CodistanceAtlas tmp;
    tmp.building = minus;
    tmp.members = members;
    const std::string table = read_text_file(root / "deltastar.txt");
    const bool same = table == deltastar_table(tmp);
    report << "deltastar table: " << (same ? "matches members" : "differs from members") << '\n';
    stored_ok = stored_ok && same;
  }

  const Hypotheses hyp = hypotheses(*minus);
  const std::size_t fop_size = fop(seed).size();
  std::string result = "pass", axioms = "fail", seed_ok = "fail";
  int code = kPass;
  try {
    const TwinAssembly twin = assemble_twin(make_atlas(minus, members, panels));
    describe_checks(twin, report);
    axioms = pass_fail(axioms_ok(twin));
    seed_ok = pass_fail(members.front() == seed && seed_matches(twin, seed));
    // Recompute the component of the seed and compare as sets.
    AtlasLimits limits;
    limits.cap = cap;
    const auto fresh = atlas_component(seed, limits);
    std::set<std::vector<WeylElt>> a, b2;
    for (const auto& g : fresh.members) a.insert(g.values());
    for (const auto& g : members) b2.insert(g.values());
    const bool same = a == b2;
    report << "recomputed atlas: " << fresh.size() << " codistances, " << (same ? "equal" : "different") << '\n';
    if (!twin.ok() || !stored_ok || !same || seed_ok != "pass") {
      result = "fail";
      code = kViolation;
    }
  } catch (const Error& e) {
    report << "verification stopped: " << e.what() << '\n';
    code = exit_code_for(e.code());
    if (code == kInputError) code = kViolation;
    result = code == kInconclusive ? "inconclusive" : "fail";
  }
  report << "RESULT=" << result << '\n'
         << "ATLAS_SIZE=" << members.size() << '\n'
         << "FOP_SIZE=" << fop_size << '\n'
         << "LCO=" << hyp.lco << '\n'
         << "LSCO=" << hyp.lsco << '\n'
         << "TW_AXIOMS=" << axioms << '\n'
         << "SEED_MATCH=" << seed_ok << '\n';
  out << report.str();
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Buildings, codistances and their twinnings", "cotwin"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a building bundle");
  gen_cmd->add_option("family", gen.family, "thin, digon, pg2, pg3, sp4 or product")
      ->required()
      ->check(CLI::IsMember({"thin", "digon", "pg2", "pg3", "sp4", "product"}));
  gen_cmd->add_option("--q", gen.q, "Field order for pg2, pg3, sp4");
  gen_cmd->add_option("--type", gen.type, "Coxeter type for thin, e.g. A3 or A1xI2(5)");
  gen_cmd->add_option("--a", gen.a, "First digon panel size");
  gen_cmd->add_option("--b", gen.b, "Second digon panel size");
  gen_cmd->add_option("--left", gen.left, "First factor of a product");
  gen_cmd->add_option("--right", gen.right, "Second factor of a product");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default: standard output)");

  std::string file, building, codistance, output, kind;
  Chamber chamber = 0;
  std::size_t cap = AtlasLimits{}.cap;
  std::string type;

  auto* validate = app.add_subcommand("validate", "Validate a building or a codistance");
  validate->require_subcommand(1);
  auto* validate_b = validate->add_subcommand("building", "Check the building axioms");
  validate_b->add_option("file", file)->required();
  auto* validate_c = validate->add_subcommand("codistance", "Check the codistance panel axiom");
  validate_c->add_option("file", file)->required();
  validate_c->add_option("--building", building)->required();

  auto* codist = app.add_subcommand("codist", "Produce codistances");
  codist->require_subcommand(1);
  auto* from_opp = codist->add_subcommand("from-opposite", "The codistance r_S delta(c, .)");
  from_opp->add_option("--building", building)->required();
  from_opp->add_option("--chamber", chamber)->required();
  from_opp->add_option("-o,--output", output, "Output file (default: standard output)");

  auto* check = app.add_subcommand("check", "Check (lco) or (lsco)");
  check->add_option("kind", kind)->required()->check(CLI::IsMember({"lco", "lsco"}));
  check->add_option("--building", building)->required();

  auto* fop_cmd = app.add_subcommand("fop", "Opposite set of a codistance and its simple 2-connectivity");
  fop_cmd->add_option("--codistance", codistance)->required();
  fop_cmd->add_option("--building", building)->required();

  auto* twin = app.add_subcommand("twin", "Build or verify a twin building");
  twin->require_subcommand(1);
  auto* twin_build = twin->add_subcommand("build", "Construct the twin building of a codistance");
  twin_build->add_option("--building", building)->required();
  twin_build->add_option("--codistance", codistance)->required();
  twin_build->add_option("-o,--output", output, "Output directory")->required();
  twin_build->add_option("--cap", cap, "Maximal number of codistances in the atlas");
  auto* twin_verify = twin->add_subcommand("verify", "Re-verify a twin directory");
  twin_verify->add_option("dir", file)->required();
  twin_verify->add_option("--cap", cap, "Maximal number of codistances in the atlas");

  auto* weyl = app.add_subcommand("weyl", "Coxeter group data");
  weyl->require_subcommand(1);
  auto* weyl_enum = weyl->add_subcommand("enumerate", "Order and length histogram");
  auto* weyl_b = weyl_enum->add_option("--building", building);
  auto* weyl_t = weyl_enum->add_option("--type", type, "Coxeter type, e.g. B3");
  weyl_b->excludes(weyl_t);
  weyl_enum->require_option(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (validate_b->parsed()) return cmd_validate_building(file, out);
    if (validate_c->parsed()) return cmd_validate_codistance(file, building, out, err);
    if (from_opp->parsed()) return cmd_codist_from_opposite(building, chamber, output, out);
    if (check->parsed()) return cmd_check(kind, building, out);
    if (fop_cmd->parsed()) return cmd_fop(codistance, building, out, err);
    if (twin_build->parsed()) return cmd_twin_build(building, codistance, output, cap, out, err);
    if (twin_verify->parsed()) return cmd_twin_verify(file, cap, out, err);
    if (weyl_enum->parsed()) return cmd_weyl(building, type, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace cotwin::cli
