#include "turan/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "turan/error.hpp"

namespace turan::io {

namespace {

constexpr std::uint64_t kMaxOrder = 100'000'000;

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  /// Next non-blank line split into unsigned integers; false at end of input.
  bool next(std::vector<std::uint64_t>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fields.clear();
      std::istringstream words(line);
      std::string word;
      while (words >> word) {
        if (word.find_first_not_of("0123456789") != std::string::npos || word.size() > 10) {
          fail("expected a non-negative integer, got '" + word + "'");
        }
        fields.push_back(std::stoull(word));
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, source_ + ":" + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

std::pair<std::size_t, std::size_t> read_header(LineReader& reader) {
  std::vector<std::uint64_t> f;
  if (!reader.next(f)) reader.fail("missing 'n m' header");
  if (f.size() != 2) reader.fail("header must be 'n m'");
  if (f[0] > kMaxOrder) reader.fail("n = " + std::to_string(f[0]) + " exceeds " + std::to_string(kMaxOrder));
  return {f[0], f[1]};
}

template <std::size_t K, typename Item, typename Make>
std::vector<Item> read_items(LineReader& reader, std::size_t n, std::size_t m, Make make) {
  std::vector<Item> items;
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::uint64_t> f;
  for (std::size_t i = 0; i < m; ++i) {
    if (!reader.next(f)) reader.fail("expected " + std::to_string(m) + " entries, found " + std::to_string(i));
    if (f.size() != K) reader.fail("expected " + std::to_string(K) + " vertices per line");
    for (auto x : f) {
      if (x >= n) reader.fail("vertex " + std::to_string(x) + " out of range for n = " + std::to_string(n));
    }
    std::vector<std::uint64_t> key = f;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) reader.fail("repeated vertex");
    if (!seen.insert(key).second) reader.fail("duplicate entry");
    items.push_back(make(key));
  }
  if (reader.next(f)) reader.fail("unexpected content after " + std::to_string(m) + " entries");
  return items;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  const auto [n, m] = read_header(reader);
  const auto edges = read_items<2, Edge>(reader, n, m, [](const std::vector<std::uint64_t>& k) {
    return Edge{static_cast<Vertex>(k[0]), static_cast<Vertex>(k[1])};
  });
  return Graph(n, edges);
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
  return parse_edge_list(in, path.string());
}

std::string format_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + ' ' + std::to_string(g.edge_count()) + '\n';
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
  return out;
}

Hypergraph3 parse_hypergraph(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  const auto [n, m] = read_header(reader);
  const auto triples = read_items<3, Triple>(reader, n, m, [](const std::vector<std::uint64_t>& k) {
    return Triple{static_cast<Vertex>(k[0]), static_cast<Vertex>(k[1]), static_cast<Vertex>(k[2])};
  });
  return Hypergraph3(n, triples);
}

Hypergraph3 read_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
  return parse_hypergraph(in, path.string());
}

std::string format_hypergraph(const Hypergraph3& hg) {
  std::string out = std::to_string(hg.order()) + ' ' + std::to_string(hg.edge_count()) + '\n';
  for (const auto& t : hg.edges()) {
    out += std::to_string(t[0]) + ' ' + std::to_string(t[1]) + ' ' + std::to_string(t[2]) + '\n';
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidConfig, path.string() + ": cannot write");
  out << text;
}

}  // namespace turan::io
