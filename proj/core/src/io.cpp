#include "cotwin/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cotwin/errors.hpp"

namespace cotwin {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool done() {
    skip_blank();
    return pos_ >= text_.size();
  }

  std::size_t line_number() const { return line_; }

  /// Next non-blank line, split on whitespace.
  std::vector<std::string_view> next(const char* expecting) {
    skip_blank();
    if (pos_ >= text_.size()) fail(std::string("unexpected end of file, expecting ") + expecting);
    return split_ws(take());
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::Parse, "line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::string_view take() {
    const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    if (!line.empty() && line.back() == '\r') fail("CR line endings are not supported");
    return line;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      if (!split_ws(text_.substr(pos_, end - pos_)).empty()) return;
      pos_ = end + 1;
      ++line_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

template <class Int>
Int to_int(const LineReader& in, std::string_view token) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) in.fail("expected an integer, got '" + std::string(token) + "'");
  return value;
}

void expect_keyword(const LineReader& in, const std::vector<std::string_view>& tokens, std::string_view keyword,
                    std::size_t arity) {
  if (tokens.empty() || tokens[0] != keyword) in.fail("expected '" + std::string(keyword) + "'");
  if (tokens.size() != arity + 1) in.fail("'" + std::string(keyword) + "' takes " + std::to_string(arity) + " value(s)");
}

void expect_header(LineReader& in, std::string_view kind) {
  const auto header = in.next("a header");
  if (header.size() != 2 || header[0] != kind) in.fail("missing '" + std::string(kind) + " 1' header");
  if (header[1] != "1") in.fail("unsupported format version " + std::string(header[1]));
}

}  // namespace

WeylElt parse_word(const WeylTable& W, std::string_view text, bool* canonical) {
  const auto& gens = W.matrix().gens();
  std::vector<int> letters;
  if (text.empty()) throw Error(Errc::Parse, "empty word");
  if (text != "-" && text != "1") {
    auto letter = [&](std::string_view name) {
      const auto s = W.matrix().gen_index(name);
      if (!s) throw Error(Errc::Parse, "unknown generator '" + std::string(name) + "' in word '" + std::string(text) + "'");
      letters.push_back(*s);
    };
    const bool single = std::all_of(gens.begin(), gens.end(), [](const std::string& g) { return g.size() == 1; });
    if (text.find('.') != std::string_view::npos || !single) {
      std::size_t i = 0;
      while (true) {
        const std::size_t j = std::min(text.find('.', i), text.size());
        letter(text.substr(i, j - i));
        if (j == text.size()) break;
        i = j + 1;
      }
    } else {
      for (std::size_t i = 0; i < text.size(); ++i) letter(text.substr(i, 1));
    }
  }
  const WeylElt w = W.from_word(letters);
  if (canonical) *canonical = format_word(W, w, "-") == text;
  return w;
}

std::string write_building(const Building& b) {
  const CoxeterMatrix& M = b.weyl().matrix();
  std::ostringstream out;
  out << "%building 1\n";
  out << "name " << b.name() << '\n';
  out << "rank " << b.rank() << '\n';
  out << "gens";
  for (const auto& g : M.gens()) out << ' ' << g;
  out << "\nmatrix\n";
  for (int i = 0; i < b.rank(); ++i) {
    for (int j = 0; j < b.rank(); ++j) out << (j ? " " : "") << M.entry(i, j);
    out << '\n';
  }
  out << "chambers " << b.size() << '\n';
  for (int s = 0; s < b.rank(); ++s) {
    out << "panels " << M.gens()[s] << '\n';
    std::vector<std::vector<Chamber>> panels;
    for (std::uint32_t i = 0; i < b.panel_count(s); ++i) {
      auto p = b.panel_members(s, i);
      std::sort(p.begin(), p.end());
      panels.push_back(std::move(p));
    }
    std::sort(panels.begin(), panels.end());
    for (const auto& p : panels) {
      for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
      out << '\n';
    }
  }
  out << "end\n";
  return out.str();
}

BuildingPtr read_building(std::string_view text) {
  LineReader in(text);
  expect_header(in, "%building");

  auto line = in.next("'name'");
  expect_keyword(in, line, "name", 1);
  const std::string name(line[1]);

  line = in.next("'rank'");
  expect_keyword(in, line, "rank", 1);
  const int k = to_int<int>(in, line[1]);
  if (k < 1 || k > 8) in.fail("rank must be between 1 and 8");

  line = in.next("'gens'");
  expect_keyword(in, line, "gens", static_cast<std::size_t>(k));
  std::vector<std::string> gens(line.begin() + 1, line.end());

  line = in.next("'matrix'");
  expect_keyword(in, line, "matrix", 0);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < k; ++i) {
    line = in.next("a matrix row");
    if (line.size() != static_cast<std::size_t>(k)) in.fail("matrix row needs " + std::to_string(k) + " entries");
    std::vector<int> row;
    for (auto tok : line) row.push_back(to_int<int>(in, tok));
    rows.push_back(std::move(row));
  }

  line = in.next("'chambers'");
  expect_keyword(in, line, "chambers", 1);
  const auto n = to_int<std::size_t>(in, line[1]);

  std::vector<Building::PanelList> panels(k);
  line = in.next("'panels'");
  for (int s = 0; s < k; ++s) {
    expect_keyword(in, line, "panels", 1);
    if (line[1] != gens[s]) in.fail("panel blocks must follow the generator order; expected " + gens[s]);
    while (true) {
      line = in.next("a panel line, 'panels' or 'end'");
      if (line[0] == "panels" || line[0] == "end") break;
      std::vector<Chamber> p;
      for (auto tok : line) {
        const auto c = to_int<Chamber>(in, tok);
        if (c >= n) in.fail("chamber id " + std::to_string(c) + " out of range");
        p.push_back(c);
      }
      panels[s].push_back(std::move(p));
    }
  }
  expect_keyword(in, line, "end", 0);
  if (!in.done()) in.fail("text after 'end'");

  auto weyl = std::make_shared<const WeylTable>(enumerate_weyl(CoxeterMatrix(std::move(gens), std::move(rows))));
  return std::make_shared<const Building>(name, std::move(weyl), n, std::move(panels));
}

std::string write_codistance(const Codistance& f) {
  const Building& b = f.building();
  std::ostringstream out;
  out << "%codistance 1\n";
  out << "building " << b.name() << '\n';
  out << "values\n";
  for (Chamber c = 0; c < b.size(); ++c) out << c << ' ' << format_word(b.weyl(), f(c), "-") << '\n';
  out << "end\n";
  return out.str();
}

Codistance read_codistance(std::string_view text, const BuildingPtr& b, std::vector<std::string>* warnings) {
  LineReader in(text);
  expect_header(in, "%codistance");
  auto line = in.next("'building'");
  expect_keyword(in, line, "building", 1);
  if (line[1] != b->name()) {
    throw Error(Errc::BuildingMismatch, "codistance is for building '" + std::string(line[1]) + "', not '" + b->name() + "'");
  }
  line = in.next("'values'");
  expect_keyword(in, line, "values", 0);
  std::vector<WeylElt> values(b->size());
  std::vector<char> seen(b->size(), 0);
  while (true) {
    line = in.next("a value line or 'end'");
    if (line[0] == "end") break;
    if (line.size() != 2) in.fail("value lines are '<chamber> <word>'");
    const auto c = to_int<Chamber>(in, line[0]);
    if (c >= b->size()) throw Error(Errc::BuildingMismatch, "chamber id " + std::to_string(c) + " out of range");
    if (seen[c]) in.fail("chamber " + std::to_string(c) + " listed twice");
    seen[c] = 1;
    bool canonical = true;
    try {
      values[c] = parse_word(b->weyl(), line[1], &canonical);
    } catch (const Error& e) {
      in.fail(e.what());
    }
    if (!canonical && warnings) {
      warnings->push_back("line " + std::to_string(in.line_number()) + ": word '" + std::string(line[1]) +
                          "' canonicalized to '" + format_word(b->weyl(), values[c], "-") + "'");
    }
  }
  expect_keyword(in, line, "end", 0);
  if (!in.done()) in.fail("text after 'end'");
  if (std::count(seen.begin(), seen.end(), 0) != 0) {
    throw Error(Errc::BuildingMismatch, "codistance does not give a value for every chamber");
  }
  return Codistance(b, std::move(values));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

}  // namespace cotwin
