#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "flam/census.hpp"
#include "flam/error.hpp"
#include "flam/reduce.hpp"
#include "flam/set_model.hpp"
#include "flam/synth.hpp"
#include "flam/syntax.hpp"
#include "flam/vec_model.hpp"

namespace flam::cli {

namespace {

using nlohmann::json;

struct Options {
  std::uint32_t field = 2;
  std::string model = "vec";
  std::string format = "text";
  std::optional<std::size_t> fuel;
  std::size_t max = 20;
  bool slow = false;
  bool fingerprint = false;
  std::optional<std::uint64_t> seed;
  bool trace = false;
  std::string type = "1";
  std::string vector;
  std::optional<std::uint64_t> rank;
  bool delta = false;
  std::vector<std::string> files;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Session {
 public:
  Session(const Options& o, std::ostream& out) : o_(o), out_(out), field_(o.field) {
    if (o.model != "vec" && o.model != "set") throw UsageError("--model must be set or vec");
  }

  bool vec() const { return o_.model == "vec"; }

  // Scalars only make sense against a field, which the set model lacks.
  Judgment load(const std::string& path) const {
    Program p = parse_program(read_file(path), vec() ? std::optional<Field>(field_) : std::nullopt);
    return make_judgment(p.context, p.term, field_);
  }

  void check() {
    out_ << print_judgment(load(one_file())) << '\n';
  }

  void eval() {
    Judgment j = load(one_file());
    if (!j.context.empty()) throw TypeError("eval needs a closed term");
    TraceFn trace;
    if (o_.trace) trace = [&](const Step& s) { out_ << s.rule << ": " << print_term(s.term) << '\n'; };
    out_ << print_term(normalize(j.term, field_, o_.fuel, trace)) << '\n';
  }

  void denote() {
    Judgment j = load(one_file());
    if (vec()) {
      KFun den = vec_denote(j, field_);
      if (o_.format == "matrix") {
        out_ << matrix_to_text(to_matrix(den));
      } else if (o_.format == "json") {
        out_ << vec_json(den).dump() << '\n';
      } else {
        for (std::uint64_t t = 0; t < den.entries(); ++t) {
          out_ << vec_inputs(den, t) << vec_to_string(den.at(t)) << '\n';
        }
      }
      return;
    }
    SetFun den = set_denote(j);
    if (o_.format == "matrix") throw UsageError("matrix output needs --model vec");
    if (o_.format == "json") {
      out_ << json{{"type", to_string(j.type)}, {"size", den.output().size()}, {"table", den.table()}}.dump() << '\n';
      return;
    }
    for (std::uint64_t t = 0; t < den.table().size(); ++t) {
      out_ << set_inputs(den, t) << set_elem_compact(den.at(t)) << '\n';
    }
  }

  void equiv() {
    if (o_.files.size() != 2) throw UsageError("equiv takes two files");
    Judgment a = load(o_.files[0]), b = load(o_.files[1]);
    bool same = vec() ? vec_equiv(a, b, field_) : set_equiv(a, b);
    out_ << (same ? "equivalent" : "not equivalent") << '\n';
    if (same) return;
    if (vec()) {
      KFun da = vec_denote(a, field_), db = vec_denote(b, field_);
      for (std::uint64_t t = 0; t < da.entries(); ++t) {
        if (da.at(t) == db.at(t)) continue;
        out_ << "first difference: " << vec_inputs(da, t) << vec_to_string(da.at(t)) << " vs "
             << vec_to_string(db.at(t)) << '\n';
        return;
      }
    } else {
      SetFun da = set_denote(a), db = set_denote(b);
      for (std::uint64_t t = 0; t < da.table().size(); ++t) {
        if (da.table()[t] == db.table()[t]) continue;
        out_ << "first difference: " << set_inputs(da, t) << set_elem_compact(da.at(t)) << " vs "
             << set_elem_compact(db.at(t)) << '\n';
        return;
      }
    }
  }

  void census() {
    TypePtr tau = parse_type(o_.type);
    CensusOptions opts;
    opts.model = vec() ? Model::Vec : Model::Set;
    opts.max = o_.max;
    opts.slow = o_.slow;
    opts.fingerprint = o_.fingerprint || o_.slow;
    CensusReport r = church_census(tau, field_, opts);
    if (o_.format == "csv") {
      out_ << census_csv(r);
    } else if (o_.format == "json") {
      json j{{"type", to_string(tau)},
             {"model", o_.model},
             {"max", o_.max},
             {"distinct", r.distinct()},
             {"classes", r.classes},
             {"class_of", r.class_of}};
      if (vec()) j["field"] = field_.modulus();
      out_ << j.dump() << '\n';
    } else {
      out_ << census_text(r);
      if (o_.format != "matrix") return;
      for (std::size_t c = 0; c < r.classes.size(); ++c) {
        std::size_t n = r.classes[c][0];
        out_ << "\nclass " << c << " (" << n << "):\n";
        if (vec()) {
          out_ << matrix_to_text(numeral_matrix(n, tau, field_));
        } else {
          SetSpace space(Type::arrow(Type::arrow(tau, tau), Type::arrow(tau, tau)));
          out_ << set_elem_compact(space.unrank(set_denote_closed(church_numeral(n, tau)))) << '\n';
        }
      }
    }
  }

  void synth() {
    TypePtr type = parse_type(o_.type);
    if (!vec()) {
      SetSpace space(type);
      std::uint64_t r = pick_rank(space.size());
      SetElem a = space.unrank(r);
      TermPtr t = o_.delta ? set_synth_delta(a, type) : set_synth_point(a, type);
      out_ << print_term(t) << '\n';
      return;
    }
    VecSpace space(type, field_);
    std::vector<Residue> coeffs;
    if (!o_.vector.empty()) {
      std::istringstream in(o_.vector);
      for (std::int64_t c; in >> c;) coeffs.push_back(field_.reduce(c));
      if (!in.eof()) throw UsageError("--vector takes integers separated by spaces");
      if (coeffs.size() != space.dim()) {
        throw UsageError(to_string(type) + " needs " + std::to_string(space.dim()) + " coefficients");
      }
    } else {
      coeffs = space.unrank(pick_rank(space.vcount()));
    }
    SynthRequest req{type, {type, coeffs}, field_};
    out_ << print_term(o_.delta ? synth_delta(req) : synth_vector(req)) << '\n';
  }

  void translate() {
    Judgment j = load(one_file());
    Factoring f = factor_through_set(j, field_);
    const TypePtr& a = j.context.at(0).type;
    out_ << "VtoS(" << to_string(a) << ") = " << to_string(vts_type(a)) << '\n';
    out_ << "VtoS(" << to_string(j.type) << ") = " << to_string(vts_type(j.type)) << '\n';
    out_ << "tilde: " << print_judgment(f.tilde) << '\n';
    bool ok = vec_equiv(j, f.reassembled, field_);
    out_ << "reassembled: " << (ok ? "equivalent" : "not equivalent") << '\n';
    if (!ok) throw InternalError("factoring does not reproduce the judgment");
  }

 private:
  const std::string& one_file() const {
    if (o_.files.size() != 1) throw UsageError("expected exactly one input file");
    return o_.files[0];
  }

  std::uint64_t pick_rank(std::uint64_t size) const {
    if (o_.rank) {
      if (*o_.rank >= size) throw UsageError("--rank must be below " + std::to_string(size));
      return *o_.rank;
    }
    if (!o_.seed) throw UsageError("synth needs --vector, --rank or --seed");
    std::mt19937_64 rng(*o_.seed);
    return rng() % size;
  }

  static std::string vec_inputs(const KFun& den, std::uint64_t t) {
    const Context& ctx = den.judgment().context;
    if (ctx.empty()) return "";
    std::vector<std::string> parts(ctx.size());
    for (std::size_t i = ctx.size(); i-- > 0;) {
      const VecSpace& s = den.inputs()[i];
      SemVec u{s.type(), s.unrank(t % s.vcount())};
      t /= s.vcount();
      parts[i] = ctx[i].name + "=" + vec_to_string(u);
    }
    std::string line;
    for (std::size_t i = 0; i < parts.size(); ++i) line += (i ? ", " : "") + parts[i];
    return line + " |-> ";
  }

  static std::string set_inputs(const SetFun& den, std::uint64_t t) {
    const Context& ctx = den.judgment().context;
    if (ctx.empty()) return "";
    std::vector<std::string> parts(ctx.size());
    for (std::size_t i = ctx.size(); i-- > 0;) {
      const SetSpace& s = den.inputs()[i];
      parts[i] = ctx[i].name + "=" + set_elem_compact(s.unrank(t % s.size()));
      t /= s.size();
    }
    std::string line;
    for (std::size_t i = 0; i < parts.size(); ++i) line += (i ? ", " : "") + parts[i];
    return line + " |-> ";
  }

  json vec_json(const KFun& den) const {
    json j{{"type", to_string(den.output().type())}, {"field", field_.modulus()}, {"dim", den.output().dim()}};
    if (den.output().enumerable()) {
      j["size"] = den.output().vcount();
      j["table"] = embed_to_set(den).table;
    } else {
      json rows = json::array();
      for (std::uint64_t t = 0; t < den.entries(); ++t) rows.push_back(den.at(t).coeffs);
      j["table"] = rows;
    }
    return j;
  }

  const Options& o_;
  std::ostream& out_;
  Field field_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite PCF and its algebraic extension: evaluation, denotations, censuses", "flam"};
  app.require_subcommand(1);
  app.add_option("--field", o.field, "Prime modulus of the scalar field")->envname("FLAM_FIELD");
  app.add_option("--model", o.model, "Semantic model: set or vec")->check(CLI::IsMember({"set", "vec"}));
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "matrix", "csv"}));
  app.add_option("--fuel", o.fuel, "Reduction step budget");
  app.add_option("--max", o.max, "Largest numeral in a census");
  app.add_flag("--slow", o.slow, "Allow long-running censuses (implies --fingerprint)");
  app.add_flag("--fingerprint", o.fingerprint, "Hash census denotations instead of storing them");
  app.add_option("--seed", o.seed, "Seed for picking a random target in synth");

  auto* check = app.add_subcommand("check", "Typecheck a term and print its judgment");
  auto* eval = app.add_subcommand("eval", "Normalize a closed term under call-by-name");
  auto* denote = app.add_subcommand("denote", "Print the denotation of a judgment");
  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two judgments");
  auto* census = app.add_subcommand("census", "Partition Church numerals by denotation");
  auto* synth = app.add_subcommand("synth", "Synthesize a term from a semantic value");
  auto* translate = app.add_subcommand("translate", "Factor an algebraic judgment through a pure term (F_2)");
  for (auto* sub : {check, eval, denote, equiv, translate}) sub->add_option("files", o.files)->required();
  eval->add_flag("--trace", o.trace, "Print every reduction step");
  census->add_option("--type", o.type, "Base type of the numerals");
  synth->add_option("--type", o.type, "Target type")->required();
  synth->add_option("--vector", o.vector, "Target coefficients in coordinate order");
  synth->add_option("--rank", o.rank, "Target given by its rank");
  synth->add_flag("--delta", o.delta, "Synthesize the indicator term instead");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Session s(o, out);
    if (*check) s.check();
    if (*eval) s.eval();
    if (*denote) s.denote();
    if (*equiv) s.equiv();
    if (*census) s.census();
    if (*synth) s.synth();
    if (*translate) s.translate();
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kParseError;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << '\n';
    return kTypeError;
  } catch (const GuardError& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kGuard;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kGuard;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace flam::cli
