#include "ssms/vertex.hpp"

#include <charconv>

#include "ssms/error.hpp"

namespace ssms {

VertexId VertexId::index(std::int64_t i) { return VertexId(Kind::Index, {i}); }

VertexId VertexId::coord(std::vector<std::int64_t> c) {
  return VertexId(Kind::Coord, std::move(c));
}

VertexId VertexId::pair(const VertexId& a, const VertexId& b) {
  const VertexId& lo = (a < b) ? a : b;
  const VertexId& hi = (a < b) ? b : a;
  std::vector<std::int64_t> d;
  d.reserve(lo.data_.size() + hi.data_.size() + 4);
  lo.append_encoded(d);
  hi.append_encoded(d);
  return VertexId(Kind::Pair, std::move(d));
}

void VertexId::append_encoded(std::vector<std::int64_t>& out) const {
  out.push_back(static_cast<std::int64_t>(kind_));
  out.push_back(static_cast<std::int64_t>(data_.size()));
  out.insert(out.end(), data_.begin(), data_.end());
}

VertexId VertexId::decode(std::span<const std::int64_t> data, std::size_t& pos) {
  auto kind = static_cast<Kind>(data[pos]);
  auto n = static_cast<std::size_t>(data[pos + 1]);
  pos += 2;
  std::vector<std::int64_t> d(data.begin() + static_cast<std::ptrdiff_t>(pos),
                              data.begin() + static_cast<std::ptrdiff_t>(pos + n));
  pos += n;
  return VertexId(kind, std::move(d));
}

std::int64_t VertexId::as_index() const {
  if (kind_ != Kind::Index) throw Error(ErrorCode::InvalidVertex, "not an index vertex: " + to_string());
  return data_[0];
}

std::span<const std::int64_t> VertexId::coords() const {
  if (kind_ != Kind::Coord) throw Error(ErrorCode::InvalidVertex, "not a coordinate vertex: " + to_string());
  return data_;
}

std::pair<VertexId, VertexId> VertexId::endpoints() const {
  if (kind_ != Kind::Pair) throw Error(ErrorCode::InvalidVertex, "not an edge vertex: " + to_string());
  std::size_t pos = 0;
  VertexId a = decode(data_, pos);
  VertexId b = decode(data_, pos);
  return {std::move(a), std::move(b)};
}

std::string VertexId::to_string() const {
  switch (kind_) {
    case Kind::Index:
      return std::to_string(data_[0]);
    case Kind::Coord: {
      std::string s = "(";
      for (std::size_t i = 0; i < data_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(data_[i]);
      }
      return s + ")";
    }
    case Kind::Pair: {
      auto [a, b] = endpoints();
      return "[" + a.to_string() + ";" + b.to_string() + "]";
    }
  }
  return {};
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail() const {
    throw Error(ErrorCode::ParseError, "malformed vertex '" + std::string(s) + "'");
  }

  std::int64_t integer() {
    std::int64_t value = 0;
    const char* begin = s.data() + pos;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail();
    pos += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  void expect(char c) {
    if (pos >= s.size() || s[pos] != c) fail();
    ++pos;
  }

  VertexId vertex() {
    if (pos >= s.size()) fail();
    if (s[pos] == '(') {
      ++pos;
      std::vector<std::int64_t> c;
      if (pos < s.size() && s[pos] == ')') {
        ++pos;
        return VertexId::coord({});
      }
      c.push_back(integer());
      while (pos < s.size() && s[pos] == ',') {
        ++pos;
        c.push_back(integer());
      }
      expect(')');
      return VertexId::coord(std::move(c));
    }
    if (s[pos] == '[') {
      ++pos;
      VertexId a = vertex();
      expect(';');
      VertexId b = vertex();
      expect(']');
      if (a == b) fail();
      return VertexId::pair(a, b);
    }
    return VertexId::index(integer());
  }
};

}  // namespace

VertexId VertexId::parse(std::string_view text) {
  Parser p{text};
  VertexId v = p.vertex();
  if (p.pos != text.size()) p.fail();
  return v;
}

std::size_t VertexId::hash() const {
  // splitmix-style mixing over the encoded words
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(kind_);
  for (std::int64_t x : data_) {
    std::uint64_t z = h + static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace ssms
