#include "symrec/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "symrec/errors.hpp"
#include "symrec/io.hpp"
#include "symrec/service.hpp"

namespace symrec::cli {

namespace {

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open '" + path + "'");
  ss << file.rdbuf();
  return ss.str();
}

std::vector<SymptomId> split_list(const std::string& text) {
  std::vector<SymptomId> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    check_symptom_name(item);
    out.push_back(std::move(item));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<DisorderSpec> load_specs(const std::vector<std::string>& paths, std::istream& in) {
  std::vector<DisorderSpec> specs;
  for (const auto& p : paths)
    for (auto& s : io::parse_specs(read_source(p, in))) specs.push_back(std::move(s));
  return specs;
}

// Writes to --out when given, else to `out`.
void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write '" + out_path + "'");
  file << text;
}

struct Options {
  std::string matrix;
  std::vector<std::string> specs;
  std::string present;
  std::string absent;
  std::uint64_t budget = kDefaultBudget;
  bool json = false;
  bool strict = false;
  bool bracket = false;
  std::string out;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data;
};

int do_generate(const Options& o, std::istream& in, std::ostream& out) {
  auto matrix = generate_matrix(load_specs(o.specs, in), o.budget);
  emit(io::serialize_matrix(matrix), o.out, out);
  return kOk;
}

// Conditions a spec on the observations; nullopt when nothing survives.
std::optional<DisorderSpec> condition(const DisorderSpec& spec, const std::vector<SymptomId>& present,
                                      const std::vector<SymptomId>& absent, std::ostream& err) {
  std::vector<SymptomId> in_support;
  for (const auto& s : present) {
    if (spec.in_support(s))
      in_support.push_back(s);
    else
      err << "note: '" << s << "' is outside the support of '" << spec.label() << "', ignored\n";
  }
  if (g3_exclusion_check(spec, in_support)) return std::nullopt;
  auto reduced = apply_absent(spec, absent);
  if (!reduced) return std::nullopt;
  for (const auto& s : in_support)
    if (!reduced->in_support(s)) return std::nullopt;
  return simplify_max(*reduced, in_support);
}

int do_count(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto specs = load_specs(o.specs, in);
  auto present = split_list(o.present);
  auto absent = split_list(o.absent);
  std::ostringstream text;
  for (const auto& spec : specs) {
    auto conditioned = condition(spec, present, absent, err);
    std::uint64_t n = conditioned ? count_disorder(*conditioned) : 0;
    if (specs.size() > 1) text << spec.label() << '\t';
    text << n << '\n';
  }
  emit(text.str(), o.out, out);
  return kOk;
}

int do_simplify(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto specs = load_specs(o.specs, in);
  auto present = split_list(o.present);
  auto absent = split_list(o.absent);
  std::vector<DisorderSpec> result;
  for (const auto& spec : specs) {
    auto conditioned = condition(spec, present, absent, err);
    if (conditioned)
      result.push_back(std::move(*conditioned));
    else
      err << "'" << spec.label() << "' is infeasible under the observations\n";
  }
  if (result.empty()) return kDomainError;
  std::string text;
  if (o.bracket) {
    for (const auto& s : result) text += s.label() + " = " + to_bracket(s) + "\n";
  } else {
    text = result.size() == 1 && specs.size() == 1 ? io::serialize_spec(result[0]) : io::serialize_specs(result);
  }
  emit(text, o.out, out);
  return kOk;
}

int do_recommend(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  if (o.matrix.empty() && o.specs.empty()) throw CLI::ValidationError("recommend needs --matrix or --spec");
  ObservationSet obs(split_list(o.present), split_list(o.absent));
  Recommendation rec;
  if (!o.matrix.empty()) {
    auto doc = io::parse_matrix(read_source(o.matrix, in));
    for (const auto& w : doc.warnings) err << "warning: " << w << '\n';
    rec = recommend(Dataset::from_matrix("cli", std::move(doc.matrix)), obs);
  } else {
    rec = recommend_lazy(Dataset::from_specs("cli", load_specs(o.specs, in)), obs, o.budget);
  }
  for (const auto& w : rec.warnings) err << "warning: " << w << '\n';
  emit(o.json ? io::serialize_recommendation(rec) : format_recommendation(rec), o.out, out);
  return o.strict && rec.no_candidates() ? kDomainError : kOk;
}

int do_serve(const Options& o, std::ostream& err) {
  Service service(o.budget);
  if (!o.data.empty())
    for (const auto& id : service.load_directory(o.data)) err << "loaded dataset '" << id << "'\n";
  return serve(service, o.host, o.port) == 0 ? kOk : kDomainError;
}

}  // namespace

std::string format_recommendation(const Recommendation& rec) {
  std::ostringstream os;
  os << "Possible Disorders: " << (rec.candidates.empty() ? "(none)" : join(rec.candidates)) << '\n';
  if (!rec.excluded.empty()) os << "Excluded Disorders: " << join(rec.excluded) << '\n';
  if (!rec.candidates.empty()) {
    os << "Surviving Profiles:";
    for (std::size_t i = 0; i < rec.candidates.size(); ++i)
      os << (i ? ", " : " ") << rec.candidates[i] << " (" << rec.group_sizes[i] << ")";
    os << '\n';
  }
  os << "Best Symptoms: " << (rec.informative.s_inter.empty() ? "(none)" : join(rec.informative.s_inter)) << '\n';
  os << "  Useful symptoms for present (1): " << join(rec.informative.s1) << '\n';
  os << "  Useful symptoms for absent (0): " << join(rec.informative.s0) << '\n';
  os << "Symptom - Disorder - Differ:\n";
  for (const auto& e : rec.pairs.entries) {
    std::vector<std::string> pairs;
    for (const auto& [a, b] : e.pairs) pairs.push_back(a + "/" + b);
    os << "  " << e.symptom << " corresponds to " << join(pairs, " and ") << '\n';
  }
  if (rec.diagnosis_complete) os << "Diagnosis complete: one candidate remains\n";
  if (!rec.candidates.empty() && !rec.columns.empty()) {
    os << "Aggregated Frequencies:\n  disorder";
    for (const auto& c : rec.columns) os << ' ' << c;
    os << '\n';
    for (std::size_t g = 0; g < rec.candidates.size(); ++g) {
      os << "  " << rec.candidates[g];
      for (const auto& f : rec.frequencies[g]) os << ' ' << f.to_decimal();
      os << '\n';
    }
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diagnostic recommender over binary symptom-profile matrices"};
  app.require_subcommand(1);
  Options o;

  auto add_specs = [&](CLI::App* sub, bool required) {
    auto opt = sub->add_option("--spec", o.specs, "Generator spec JSON (repeatable)");
    if (required) opt->required();
    return opt;
  };
  auto add_observations = [&](CLI::App* sub) {
    sub->add_option("--present", o.present, "Comma-separated present symptoms");
    sub->add_option("--absent", o.absent, "Comma-separated absent symptoms");
  };

  auto* generate = app.add_subcommand("generate", "Enumerate specs into a matrix CSV");
  add_specs(generate, true);
  generate->add_option("--budget", o.budget, "Maximum rows to generate");
  generate->add_option("--out", o.out, "Output path (default stdout)");

  auto* count = app.add_subcommand("count", "Count the profiles of specs");
  add_specs(count, true);
  add_observations(count);
  count->add_option("--out", o.out, "Output path (default stdout)");

  auto* simplify = app.add_subcommand("simplify", "Condition specs on observations");
  add_specs(simplify, true);
  add_observations(simplify);
  simplify->add_flag("--bracket", o.bracket, "Print bracket notation instead of JSON");
  simplify->add_option("--out", o.out, "Output path (default stdout)");

  auto* recommend_cmd = app.add_subcommand("recommend", "One-shot recommendation");
  auto* matrix_opt = recommend_cmd->add_option("--matrix", o.matrix, "Matrix CSV path, or - for stdin");
  auto* spec_opt = add_specs(recommend_cmd, false);
  matrix_opt->excludes(spec_opt);
  spec_opt->excludes(matrix_opt);
  add_observations(recommend_cmd);
  recommend_cmd->add_option("--budget", o.budget, "Maximum rows generated on the lazy path");
  recommend_cmd->add_flag("--json", o.json, "Emit the canonical JSON recommendation");
  recommend_cmd->add_flag("--strict", o.strict, "Exit 1 when no candidate remains");
  recommend_cmd->add_option("--out", o.out, "Output path (default stdout)");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", o.port, "Port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", o.host, "Bind address");
  serve_cmd->add_option("--data", o.data, "Directory of datasets to preload")->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--budget", o.budget, "Maximum rows generated per recommendation");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (generate->parsed()) return do_generate(o, in, out);
    if (count->parsed()) return do_count(o, in, out, err);
    if (simplify->parsed()) return do_simplify(o, in, out, err);
    if (recommend_cmd->parsed()) return do_recommend(o, in, out, err);
    if (serve_cmd->parsed()) return do_serve(o, err);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SpecValidation& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace symrec::cli
