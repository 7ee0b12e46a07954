#include "msdp/instance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

namespace msdp {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Table instances

void TableInstance::validate() const {
  const std::size_t n = phi.size();
  const std::size_t m = alphabet.size();
  if (n == 0) throw InvalidInstanceError("table: no stages");
  if (m == 0) throw InvalidInstanceError("table: empty alphabet");
  if (weights.size() != n)
    throw InvalidInstanceError("table: expected " + std::to_string(n) +
                               " weights");
  for (std::size_t i = 0; i < n; ++i)
    if (phi[i].size() != m)
      throw InvalidInstanceError("table: phi row " + std::to_string(i) +
                                 " has wrong width");
  if (budget) {
    if (budget->weights.size() != n)
      throw InvalidInstanceError("table: budget weights need N rows");
    for (const auto& row : budget->weights)
      if (row.size() != m)
        throw InvalidInstanceError("table: budget weight row has wrong width");
  }
  if (blackbox && !(blackbox->density >= 0.0 && blackbox->density <= 1.0))
    throw InvalidInstanceError("table: blackbox density must lie in [0, 1]");
  if (structure == Structure::kPermutation && n != m)
    throw InvalidInstanceError("table: permutation structure requires N == M");
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double blackbox_draw(std::uint64_t seed, Prefix x) {
  std::uint64_t h = splitmix(seed);
  for (Symbol s : x) h = splitmix(h ^ static_cast<std::uint64_t>(s));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Feasibility combine(std::span<const Feasibility> verdicts) {
  for (Feasibility v : verdicts)
    if (v == Feasibility::kInfeasible) return Feasibility::kInfeasible;
  // Separately completable families need not be jointly completable.
  if (verdicts.size() == 1) return verdicts[0];
  return verdicts.empty() ? Feasibility::kFeasible : Feasibility::kUnknown;
}

}  // namespace

ProblemH table_problem(const TableInstance& src) {
  src.validate();
  auto inst = std::make_shared<TableInstance>(src);
  if (inst->structure == Structure::kPermutation) inst->distinct = true;
  const std::size_t n = inst->stages();
  const std::size_t m = inst->alphabet.size();

  ProblemH p;
  p.name = "table";
  p.stages = n;
  p.alphabet = Alphabet(inst->alphabet);
  p.weights = inst->weights;
  p.locality = RewardLocality::kNode;
  p.structure = inst->structure;
  p.reward = [inst](std::size_t i, Prefix, Symbol s) { return inst->phi[i][s]; };

  // Cheapest budget use of stages i..N-1.
  std::vector<double> min_tail(n + 1, 0.0);
  if (inst->budget)
    for (std::size_t i = n; i-- > 0;)
      min_tail[i] = *std::min_element(inst->budget->weights[i].begin(),
                                      inst->budget->weights[i].end()) +
                    min_tail[i + 1];

  auto used = [inst](Prefix x) {
    double u = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) u += inst->budget->weights[i][x[i]];
    return u;
  };
  auto ordered = [inst](Prefix x) {
    switch (inst->ordering) {
      case TableInstance::Ordering::kNonIncreasing:
        return std::is_sorted(x.rbegin(), x.rend());
      case TableInstance::Ordering::kNonDecreasing:
        return std::is_sorted(x.begin(), x.end());
      case TableInstance::Ordering::kNone:
        break;
    }
    return true;
  };
  auto distinct = [m](Prefix x) {
    std::vector<bool> seen(m, false);
    for (Symbol s : x) {
      if (seen[s]) return false;
      seen[s] = true;
    }
    return true;
  };

  p.csf.full = [=](Prefix x) {
    if (inst->budget && !(used(x) <= inst->budget->capacity)) return false;
    if (!ordered(x)) return false;
    if (inst->distinct && !distinct(x)) return false;
    if (inst->blackbox &&
        !(blackbox_draw(inst->blackbox->seed, x) < inst->blackbox->density))
      return false;
    return true;
  };
  p.csf.partial = [=](Prefix x) {
    std::vector<Feasibility> v;
    if (inst->budget)
      v.push_back(used(x) + min_tail[x.size()] <= inst->budget->capacity
                      ? Feasibility::kFeasible
                      : Feasibility::kInfeasible);
    if (inst->ordering != TableInstance::Ordering::kNone)
      v.push_back(ordered(x) ? Feasibility::kFeasible
                             : Feasibility::kInfeasible);
    if (inst->distinct)
      v.push_back(distinct(x) && n <= m ? Feasibility::kFeasible
                                        : Feasibility::kInfeasible);
    if (inst->blackbox) {
      if (x.size() == n)
        v.push_back(blackbox_draw(inst->blackbox->seed, x) <
                            inst->blackbox->density
                        ? Feasibility::kFeasible
                        : Feasibility::kInfeasible);
      else
        v.push_back(Feasibility::kUnknown);
    }
    return combine(v);
  };
  if (!inst->blackbox) {
    p.csf.digest = [=](Prefix x) {
      Digest d;
      if (inst->budget) d.push_back(std::bit_cast<std::int64_t>(used(x)));
      if (inst->ordering != TableInstance::Ordering::kNone)
        d.push_back(x.empty() ? -1 : x.back());
      if (inst->distinct) {
        std::int64_t word = 0;
        std::size_t bit = 0;
        std::vector<bool> seen(m, false);
        for (Symbol s : x) seen[s] = true;
        for (std::size_t j = 0; j < m; ++j) {
          if (seen[j]) word |= std::int64_t{1} << bit;
          if (++bit == 63) {
            d.push_back(word);
            word = 0;
            bit = 0;
          }
        }
        d.push_back(word);
      }
      return d;
    };
  }
  return p;
}

ProblemH to_problem(const InstanceSpec& spec) {
  return std::visit(
      [](const auto& inst) -> ProblemH {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, TableInstance>) return table_problem(inst);
        else if constexpr (std::is_same_v<T, AdcInstance>) return adc_problem(inst);
        else if constexpr (std::is_same_v<T, DfaInstance>) return dfa_problem(inst);
        else return cmdp_to_h(inst.model, inst.rules);
      },
      spec);
}

// ---------------------------------------------------------------------------
// JSON reading

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}
std::string join(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& field(const Json& j, const std::string& key,
                  const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(join(path, key), "missing field");
  return *it;
}

double get_double(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  return v.get<double>();
}

std::int64_t get_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_uint(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ParseError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw ParseError(path, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path, "expected a string");
  return v.get<std::string>();
}

const Json& get_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  return v;
}

std::vector<double> get_doubles(const Json& v, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < get_array(v, path).size(); ++i)
    out.push_back(get_double(v[i], join(path, i)));
  return out;
}

std::vector<std::int64_t> get_ints(const Json& v, const std::string& path) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < get_array(v, path).size(); ++i)
    out.push_back(get_int(v[i], join(path, i)));
  return out;
}

std::vector<std::vector<double>> get_matrix(const Json& v,
                                            const std::string& path) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < get_array(v, path).size(); ++i)
    out.push_back(get_doubles(v[i], join(path, i)));
  return out;
}

void expect_size(std::size_t got, std::size_t want, const std::string& path) {
  if (got != want)
    throw ParseError(path, "expected " + std::to_string(want) +
                               " entries, got " + std::to_string(got));
}

template <class F>
auto validated(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InvalidInstanceError& e) {
    throw ParseError(path, e.what());
  }
}

TableInstance parse_table(const Json& j) {
  TableInstance t;
  const std::size_t n = get_uint(field(j, "N", ""), "N");
  t.alphabet = get_ints(field(j, "alphabet", ""), "alphabet");
  t.weights = get_doubles(field(j, "b", ""), "b");
  expect_size(t.weights.size(), n, "b");
  t.phi = get_matrix(field(field(j, "phi", ""), "table", "phi"), "phi.table");
  expect_size(t.phi.size(), n, "phi.table");
  for (std::size_t i = 0; i < n; ++i)
    expect_size(t.phi[i].size(), t.alphabet.size(), join("phi.table", i));
  if (auto it = j.find("structure"); it != j.end()) {
    const std::string s = get_string(*it, "structure");
    if (s == "permutation") t.structure = Structure::kPermutation;
    else if (s != "vector")
      throw ParseError("structure", "expected \"vector\" or \"permutation\"");
  }
  if (auto it = j.find("constraints"); it != j.end()) {
    const Json& c = *it;
    if (!c.is_object()) throw ParseError("constraints", "expected an object");
    for (auto kv = c.begin(); kv != c.end(); ++kv) {
      const std::string key = kv.key();
      const std::string path = join("constraints", key);
      if (key == "budget") {
        TableInstance::Budget b;
        b.weights = get_matrix(field(kv.value(), "weights", path),
                               join(path, "weights"));
        b.capacity = get_double(field(kv.value(), "capacity", path),
                                join(path, "capacity"));
        t.budget = std::move(b);
      } else if (key == "ordering") {
        const std::string s = get_string(kv.value(), path);
        if (s == "nonincreasing") t.ordering = TableInstance::Ordering::kNonIncreasing;
        else if (s == "nondecreasing") t.ordering = TableInstance::Ordering::kNonDecreasing;
        else if (s != "none")
          throw ParseError(path, "expected none, nonincreasing or nondecreasing");
      } else if (key == "distinct") {
        t.distinct = get_bool(kv.value(), path);
      } else if (key == "blackbox") {
        TableInstance::Blackbox b;
        b.seed = get_uint(field(kv.value(), "seed", path), join(path, "seed"));
        b.density = get_double(field(kv.value(), "density", path),
                               join(path, "density"));
        t.blackbox = b;
      } else {
        throw ParseError(path, "unknown constraint family");
      }
    }
  }
  validated("", [&] {
    t.validate();
    return 0;
  });
  return t;
}

AdcInstance parse_adc(const Json& params) {
  const std::string p = "phi.params";
  AdcInstance a;
  a.a = get_doubles(field(params, "a", p), join(p, "a"));
  a.b = get_doubles(field(params, "b", p), join(p, "b"));
  a.d = get_doubles(field(params, "d", p), join(p, "d"));
  a.power_budget = get_double(field(params, "Pt", p), join(p, "Pt"));
  if (auto it = params.find("bits"); it != params.end())
    a.bits = get_ints(*it, join(p, "bits"));
  if (auto it = params.find("N"); it != params.end())
    expect_size(a.a.size(), get_uint(*it, join(p, "N")), join(p, "a"));
  expect_size(a.b.size(), a.a.size(), join(p, "b"));
  expect_size(a.d.size(), a.a.size(), join(p, "d"));
  validated(p, [&] {
    a.validate();
    return 0;
  });
  return a;
}

DfaInstance parse_dfa(const Json& params, const std::filesystem::path& base) {
  const std::string p = "phi.params";
  std::vector<std::string> fragments;
  if (auto it = params.find("fragments"); it != params.end()) {
    for (std::size_t i = 0; i < get_array(*it, join(p, "fragments")).size(); ++i)
      fragments.push_back(get_string((*it)[i], join(join(p, "fragments"), i)));
  } else if (auto f = params.find("fasta"); f != params.end()) {
    std::filesystem::path path = get_string(*f, join(p, "fasta"));
    if (path.is_relative()) path = base / path;
    std::ifstream in(path);
    if (!in) throw ParseError(join(p, "fasta"), "cannot open " + path.string());
    fragments = read_fasta(in);
  } else {
    throw ParseError(join(p, "fragments"), "missing field");
  }
  SwScores s;
  if (auto it = params.find("match"); it != params.end())
    s.match = get_double(*it, join(p, "match"));
  if (auto it = params.find("mismatch"); it != params.end())
    s.mismatch = get_double(*it, join(p, "mismatch"));
  if (auto it = params.find("gap"); it != params.end())
    s.gap = get_double(*it, join(p, "gap"));
  bool bound = false;
  if (auto it = params.find("bound"); it != params.end())
    bound = get_bool(*it, join(p, "bound"));
  try {
    return DfaInstance::make(std::move(fragments), s, bound);
  } catch (const ParseError& e) {
    throw ParseError(join(p, "fragments"), e.what());
  } catch (const InvalidInstanceError& e) {
    throw ParseError(p, e.what());
  }
}

CmdpSpec parse_cmdp(const Json& params) {
  const std::string p = "phi.params";
  CmdpSpec spec;
  FiniteCmdp& m = spec.model;
  m.states = get_uint(field(params, "states", p), join(p, "states"));
  m.actions = get_uint(field(params, "actions", p), join(p, "actions"));
  const Json& tp = get_array(field(params, "P", p), join(p, "P"));
  for (std::size_t x = 0; x < tp.size(); ++x)
    m.transition.push_back(get_matrix(tp[x], join(join(p, "P"), x)));
  m.reward = get_matrix(field(params, "r", p), join(p, "r"));
  m.cost = get_matrix(field(params, "c", p), join(p, "c"));
  m.start = get_doubles(field(params, "mu", p), join(p, "mu"));
  m.gamma = get_double(field(params, "gamma", p), join(p, "gamma"));
  m.horizon = get_uint(field(params, "horizon", p), join(p, "horizon"));
  if (auto it = params.find("d"); it != params.end() && !it->is_null())
    m.budget = get_double(*it, join(p, "d"));
  if (auto it = params.find("rules"); it != params.end()) {
    for (std::size_t k = 0; k < get_array(*it, join(p, "rules")).size(); ++k) {
      DecisionRule r;
      for (std::int64_t a : get_ints((*it)[k], join(join(p, "rules"), k)))
        r.push_back(static_cast<int>(a));
      spec.rules.push_back(std::move(r));
    }
  }
  validated(p, [&] {
    m.validate();
    return 0;
  });
  return spec;
}

// Adapter instances may repeat N, alphabet and b at top level; they must
// agree with what the adapter derives.
void check_header(const Json& j, const ProblemH& p) {
  if (auto it = j.find("N"); it != j.end())
    if (get_uint(*it, "N") != p.stages)
      throw ParseError("N", "does not match adapter (" +
                                std::to_string(p.stages) + ")");
  if (auto it = j.find("alphabet"); it != j.end())
    if (get_ints(*it, "alphabet") != p.alphabet.values())
      throw ParseError("alphabet", "does not match adapter");
  if (auto it = j.find("b"); it != j.end())
    if (get_doubles(*it, "b") != p.weights)
      throw ParseError("b", "does not match adapter weights");
}

}  // namespace

InstanceSpec parse_instance(const Json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ParseError("", "instance must be a JSON object");
  const Json& phi = field(j, "phi", "");
  if (!phi.is_object()) throw ParseError("phi", "expected an object");
  if (phi.contains("table")) return parse_table(j);
  const std::string adapter = get_string(field(phi, "adapter", "phi"), "phi.adapter");
  if (adapter != "adc" && adapter != "dfa" && adapter != "cmdp")
    throw ParseError("phi.adapter", "unknown adapter '" + adapter + "'");
  const Json& params = field(phi, "params", "phi");
  InstanceSpec spec;
  if (adapter == "adc") spec = parse_adc(params);
  else if (adapter == "dfa") spec = parse_dfa(params, base);
  else spec = parse_cmdp(params);
  ProblemH p;
  try {
    p = to_problem(spec);
  } catch (const InvalidInstanceError& e) {
    throw ParseError("phi.params", e.what());
  } catch (const SizeError& e) {
    throw ParseError("phi.params", e.what());
  }
  check_header(j, p);
  return spec;
}

InstanceSpec parse_instance_text(const std::string& text,
                                 const std::filesystem::path& base) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Report a line number rather than a byte offset.
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + byte, '\n');
    throw ParseError("line " + std::to_string(line), e.what());
  }
  return parse_instance(j, base);
}

InstanceSpec load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open instance file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str(), path.parent_path());
}

// ---------------------------------------------------------------------------
// JSON writing

namespace {

Json header(const ProblemH& p) {
  Json j;
  j["N"] = p.stages;
  j["alphabet"] = p.alphabet.values();
  j["b"] = p.weights;
  return j;
}

Json table_json(const TableInstance& t) {
  Json j;
  j["N"] = t.stages();
  j["alphabet"] = t.alphabet;
  j["b"] = t.weights;
  if (t.structure == Structure::kPermutation) j["structure"] = "permutation";
  j["phi"] = Json{{"table", t.phi}};
  Json c = Json::object();
  if (t.budget)
    c["budget"] = Json{{"weights", t.budget->weights},
                       {"capacity", t.budget->capacity}};
  if (t.ordering == TableInstance::Ordering::kNonIncreasing)
    c["ordering"] = "nonincreasing";
  if (t.ordering == TableInstance::Ordering::kNonDecreasing)
    c["ordering"] = "nondecreasing";
  if (t.distinct) c["distinct"] = true;
  if (t.blackbox)
    c["blackbox"] = Json{{"seed", t.blackbox->seed},
                         {"density", t.blackbox->density}};
  j["constraints"] = std::move(c);
  return j;
}

Json adapter_json(const ProblemH& p, const char* name, Json params) {
  Json j = header(p);
  j["phi"] = Json{{"adapter", name}, {"params", std::move(params)}};
  j["constraints"] = Json::object();
  return j;
}

}  // namespace

Json instance_to_json(const InstanceSpec& spec) {
  return std::visit(
      [&](const auto& inst) -> Json {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, TableInstance>) {
          return table_json(inst);
        } else if constexpr (std::is_same_v<T, AdcInstance>) {
          Json params;
          params["N"] = inst.paths();
          params["a"] = inst.a;
          params["b"] = inst.b;
          params["d"] = inst.d;
          params["Pt"] = inst.power_budget;
          params["bits"] = inst.bits;
          return adapter_json(to_problem(spec), "adc", std::move(params));
        } else if constexpr (std::is_same_v<T, DfaInstance>) {
          Json params;
          params["fragments"] = inst.fragments;
          params["match"] = inst.scores.match;
          params["mismatch"] = inst.scores.mismatch;
          params["gap"] = inst.scores.gap;
          params["bound"] = inst.bound_enabled;
          return adapter_json(to_problem(spec), "dfa", std::move(params));
        } else {
          const FiniteCmdp& m = inst.model;
          Json params;
          params["states"] = m.states;
          params["actions"] = m.actions;
          params["P"] = m.transition;
          params["r"] = m.reward;
          params["c"] = m.cost;
          params["mu"] = m.start;
          params["gamma"] = m.gamma;
          params["horizon"] = m.horizon;
          params["d"] = std::isinf(m.budget) ? Json(nullptr) : Json(m.budget);
          if (!inst.rules.empty()) params["rules"] = inst.rules;
          return adapter_json(to_problem(spec), "cmdp", std::move(params));
        }
      },
      spec);
}

std::string dump_instance(const InstanceSpec& spec) {
  return instance_to_json(spec).dump(2) + "\n";
}

}  // namespace msdp
