#include <abelcov/config.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace abelcov {

ConfigError::ConfigError(int line, int column, const std::string& message)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class ValueKind { String, Integer, Boolean };

struct Value {
  ValueKind kind = ValueKind::String;
  std::string text;  // string contents, or the literal
  std::int64_t integer = 0;
  bool boolean = false;
  int column = 0;
};

class LineParser {
 public:
  LineParser(std::string_view line, int number) : line_(line), number_(number) {}

  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(number_, column(), message); }

  int column() const { return static_cast<int>(pos_) + 1; }
  bool done() {
    skip_space();
    return pos_ >= line_.size() || line_[pos_] == '#';
  }
  char peek() {
    skip_space();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string key() {
    skip_space();
    if (peek() == '"') return quoted();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_' ||
                                   line_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(line_.substr(start, pos_ - start));
  }

  Value value() {
    skip_space();
    Value v;
    v.column = column();
    if (peek() == '"') {
      v.kind = ValueKind::String;
      v.text = quoted();
      return v;
    }
    const std::size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) && line_[pos_] != '#') ++pos_;
    v.text = std::string(line_.substr(start, pos_ - start));
    if (v.text == "true" || v.text == "false") {
      v.kind = ValueKind::Boolean;
      v.boolean = v.text == "true";
      return v;
    }
    const char* first = v.text.data();
    if (!v.text.empty() && v.text[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, v.text.data() + v.text.size(), v.integer);
    if (v.text.empty() || ec != std::errc() || ptr != v.text.data() + v.text.size()) {
      pos_ = start;
      fail("expected a string, integer or boolean value");
    }
    v.kind = ValueKind::Integer;
    return v;
  }

 private:
  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) ++pos_;
  }

  std::string quoted() {
    ++pos_;
    std::string out;
    while (pos_ < line_.size() && line_[pos_] != '"') {
      if (line_[pos_] == '\\') {
        ++pos_;
        if (pos_ >= line_.size()) break;
        const char e = line_[pos_];
        if (e != '"' && e != '\\') fail("unsupported escape");
      }
      out += line_[pos_++];
    }
    if (pos_ >= line_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string_view line_;
  int number_;
  std::size_t pos_ = 0;
};

const std::set<std::string> kSections = {"surface", "group", "branch", "bundles", "assumptions", "expected"};

}  // namespace

CoverConfig parse_config(std::string_view text) {
  CoverConfig config;
  std::string section;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  bool rank_given = false;
  int rank_line = 0, rank_column = 0;

  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++number;
    LineParser p(raw, number);
    if (p.done()) {
      if (end == text.size()) break;
      continue;
    }
    if (p.peek() == '[') {
      p.expect('[');
      const int col = p.column();
      section = p.key();
      p.expect(']');
      if (!p.done()) p.fail("trailing characters after section header");
      if (!kSections.count(section)) throw ConfigError(number, col, "unknown section [" + section + "]");
      if (!seen_sections.insert(section).second) throw ConfigError(number, col, "duplicate section [" + section + "]");
      continue;
    }
    const int key_column = p.column();
    const std::string key = p.key();
    p.expect('=');
    const Value v = p.value();
    if (!p.done()) p.fail("trailing characters after value");
    if (section.empty()) throw ConfigError(number, key_column, "key '" + key + "' outside of any section");
    if (!seen_keys.insert(section + "." + key).second) {
      throw ConfigError(number, key_column, "duplicate key '" + key + "' in [" + section + "]");
    }
    auto need = [&](ValueKind kind, const char* what) {
      if (v.kind != kind) throw ConfigError(number, v.column, std::string("expected ") + what + " for '" + key + "'");
    };
    if (section == "surface") {
      if (key != "preset") throw ConfigError(number, key_column, "unknown key '" + key + "' in [surface]");
      need(ValueKind::String, "a string");
      config.preset = v.text;
    } else if (section == "group") {
      if (key != "rank") throw ConfigError(number, key_column, "unknown key '" + key + "' in [group]");
      need(ValueKind::Integer, "an integer");
      if (v.integer < 1 || v.integer > kMaxRank) throw ConfigError(number, v.column, "rank out of range");
      config.rank = static_cast<int>(v.integer);
      rank_given = true;
      rank_line = number;
      rank_column = v.column;
    } else if (section == "branch" || section == "bundles") {
      std::string value = v.text;
      if (v.kind == ValueKind::Boolean) throw ConfigError(number, v.column, "expected a class string");
      if (v.kind == ValueKind::Integer && v.integer != 0) {
        throw ConfigError(number, v.column, "expected a class string such as \"2F\"");
      }
      (section == "branch" ? config.branch : config.bundles).push_back({key, value, number, key_column});
    } else if (section == "assumptions") {
      need(ValueKind::Boolean, "a boolean");
      if (key == "components_smooth") {
        config.assumptions.components_smooth = v.boolean;
      } else if (key == "pairwise_distinct") {
        config.assumptions.pairwise_distinct = v.boolean;
      } else if (key == "normal_crossings") {
        config.assumptions.normal_crossings = v.boolean;
      } else {
        throw ConfigError(number, key_column, "unknown key '" + key + "' in [assumptions]");
      }
    } else if (section == "expected") {
      if (key != "K2" && key != "pg" && key != "q" && key != "chi") {
        throw ConfigError(number, key_column, "unknown key '" + key + "' in [expected]");
      }
      need(ValueKind::Integer, "an integer");
      config.expected[key] = v.integer;
    }
    if (end == text.size()) break;
  }

  // Semantic checks.
  SurfacePtr surface;
  try {
    surface = preset(config.preset);
  } catch (const InputError& e) {
    throw ConfigError(1, 1, e.what());
  }
  if (!rank_given) {
    if (config.branch.empty()) throw ConfigError(number, 1, "no [group] rank and no [branch] entries");
    config.rank = static_cast<int>(config.branch.front().key.size());
    rank_line = config.branch.front().line;
    rank_column = config.branch.front().column;
  }
  if (config.rank < 1 || config.rank > kMaxRank) throw ConfigError(rank_line, rank_column, "rank out of range");
  auto check_bits = [&](const ConfigEntry& e) {
    if (e.key.size() != static_cast<std::size_t>(config.rank)) {
      throw ConfigError(e.line, e.column, "bit string '" + e.key + "' does not have length " + std::to_string(config.rank));
    }
    for (char c : e.key) {
      if (c != '0' && c != '1') throw ConfigError(e.line, e.column, "'" + e.key + "' is not a bit string");
    }
    if (e.key.find('1') == std::string::npos) throw ConfigError(e.line, e.column, "the zero element has no entry");
  };
  for (const ConfigEntry& e : config.branch) {
    check_bits(e);
    DivisorClass d;
    try {
      d = parse_class(*surface, e.value);
    } catch (const InputError& err) {
      throw ConfigError(e.line, e.column, err.what());
    }
    if (!is_effective(*surface, d)) {
      throw ConfigError(e.line, e.column, "branch class '" + e.value + "' for " + e.key + " is not effective");
    }
  }
  for (const ConfigEntry& e : config.bundles) {
    check_bits(e);
    try {
      parse_class(*surface, e.value);
    } catch (const InputError& err) {
      throw ConfigError(e.line, e.column, err.what());
    }
  }
  return config;
}

CoverConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string render_config(const CoverConfig& config) {
  std::ostringstream out;
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "[surface]\npreset = \"" << config.preset << "\"\n\n";
  out << "[group]\nrank = " << config.rank << "\n\n";
  out << "[branch]\n";
  for (const auto& e : config.branch) out << e.key << " = \"" << e.value << "\"\n";
  if (!config.bundles.empty()) {
    out << "\n[bundles]\n";
    for (const auto& e : config.bundles) out << e.key << " = \"" << e.value << "\"\n";
  }
  out << "\n[assumptions]\n";
  out << "components_smooth = " << b(config.assumptions.components_smooth) << "\n";
  out << "pairwise_distinct = " << b(config.assumptions.pairwise_distinct) << "\n";
  out << "normal_crossings = " << b(config.assumptions.normal_crossings) << "\n";
  if (!config.expected.empty()) {
    out << "\n[expected]\n";
    for (const char* key : {"K2", "pg", "q", "chi"}) {
      if (auto it = config.expected.find(key); it != config.expected.end()) out << key << " = " << it->second << "\n";
    }
  }
  return out.str();
}

BuildingData to_building_data(const CoverConfig& config) {
  BuildingData data(preset(config.preset), config.rank);
  data.assumptions = config.assumptions;
  for (const auto& e : config.branch) data.set_branch(GroupElement::parse(e.key), parse_class(data.surface(), e.value));
  if (config.bundles.empty()) return with_solved_bundles(data);
  for (const auto& e : config.bundles) data.set_bundle(Character::parse(e.key), parse_class(data.surface(), e.value));
  return data;
}

CoverConfig to_config(const BuildingData& data, const std::map<std::string, std::int64_t>& expected) {
  CoverConfig config;
  config.preset = data.surface().name;
  config.rank = data.rank();
  config.assumptions = data.assumptions;
  config.expected = expected;
  for (const GroupElement& sigma : data.nonzero_elements()) {
    if (!data.branch(sigma).is_zero()) {
      config.branch.push_back({sigma.to_string(), format_class(data.surface(), data.branch(sigma))});
    }
  }
  for (const Character& chi : data.nontrivial_characters()) {
    if (const auto& l = data.bundle(chi)) config.bundles.push_back({chi.to_string(), format_class(data.surface(), *l)});
  }
  return config;
}

}  // namespace abelcov
