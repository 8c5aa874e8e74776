// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/ply_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

namespace pcqa {

PlyError::PlyError(const std::string& message, std::uint64_t byte_offset, std::uint64_t line)
    : Error(ErrorCategory::Parse,
            "PLY: " + message + " (line " + std::to_string(line) + ", byte " +
                std::to_string(byte_offset) + ")"),
      detail_(message),
      byte_offset_(byte_offset),
      line_(line) {}

namespace {

enum class ScalarType { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<ScalarType> parse_scalar_type(std::string_view name) {
  if (name == "char" || name == "int8") return ScalarType::Int8;
  if (name == "uchar" || name == "uint8") return ScalarType::UInt8;
  if (name == "short" || name == "int16") return ScalarType::Int16;
  if (name == "ushort" || name == "uint16") return ScalarType::UInt16;
  if (name == "int" || name == "int32") return ScalarType::Int32;
  if (name == "uint" || name == "uint32") return ScalarType::UInt32;
  if (name == "float" || name == "float32") return ScalarType::Float32;
  if (name == "double" || name == "float64") return ScalarType::Float64;
  return std::nullopt;
}

std::size_t scalar_size(ScalarType t) {
  switch (t) {
    case ScalarType::Int8:
    case ScalarType::UInt8: return 1;
    case ScalarType::Int16:
    case ScalarType::UInt16: return 2;
    case ScalarType::Int32:
    case ScalarType::UInt32:
    case ScalarType::Float32: return 4;
    case ScalarType::Float64: return 8;
  }
  return 0;
}

template <typename T>
T load_le(const char* p) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

double load_scalar(ScalarType t, const char* p) {
  switch (t) {
    case ScalarType::Int8: return load_le<std::int8_t>(p);
    case ScalarType::UInt8: return load_le<std::uint8_t>(p);
    case ScalarType::Int16: return load_le<std::int16_t>(p);
    case ScalarType::UInt16: return load_le<std::uint16_t>(p);
    case ScalarType::Int32: return load_le<std::int32_t>(p);
    case ScalarType::UInt32: return load_le<std::uint32_t>(p);
    case ScalarType::Float32: return load_le<float>(p);
    case ScalarType::Float64: return load_le<double>(p);
  }
  return 0;
}

struct Property {
  std::string name;
  ScalarType type = ScalarType::Float32;
  bool is_list = false;
  ScalarType count_type = ScalarType::UInt8;
};

struct Element {
  std::string name;
  std::uint64_t count = 0;
  std::vector<Property> properties;
};

struct Header {
  PlyFormat format = PlyFormat::Ascii;
  std::vector<Element> elements;
  std::size_t body_offset = 0;
  std::uint64_t body_line = 0;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Cursor over the raw file contents that tracks line numbers.
class Cursor {
 public:
  explicit Cursor(std::string_view data) : data_(data) {}

  bool at_end() const { return pos_ >= data_.size(); }
  std::size_t pos() const { return pos_; }
  std::uint64_t line() const { return line_; }
  std::string_view data() const { return data_; }

  // Returns the next line without its terminator, or nullopt at end of data.
  std::optional<std::string_view> next_line() {
    if (at_end()) return std::nullopt;
    const std::size_t start = pos_;
    const std::size_t nl = data_.find('\n', start);
    std::string_view line;
    if (nl == std::string_view::npos) {
      line = data_.substr(start);
      pos_ = data_.size();
    } else {
      line = data_.substr(start, nl - start);
      pos_ = nl + 1;
    }
    line_start_ = start;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  }

  std::size_t line_start() const { return line_start_; }

  void skip_bytes(std::size_t n) { pos_ += n; }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  std::uint64_t line_ = 0;
};

Header parse_header(Cursor& cur) {
  auto fail = [&](const std::string& msg) -> PlyError {
    return PlyError(msg, cur.line_start(), cur.line());
  };

  auto magic = cur.next_line();
  if (!magic || *magic != "ply") throw fail("missing 'ply' magic line");

  Header header;
  bool have_format = false;
  bool done = false;
  while (!done) {
    auto line = cur.next_line();
    if (!line) throw PlyError("unexpected end of data inside header", cur.pos(), cur.line());
    const auto tok = split_ws(*line);
    if (tok.empty()) continue;
    const std::string_view key = tok[0];
    if (key == "comment" || key == "obj_info") continue;
    if (key == "end_header") {
      done = true;
    } else if (key == "format") {
      if (tok.size() != 3) throw fail("malformed format line");
      if (tok[1] == "ascii") {
        header.format = PlyFormat::Ascii;
      } else if (tok[1] == "binary_little_endian") {
        header.format = PlyFormat::BinaryLittleEndian;
      } else {
        throw fail("unsupported format '" + std::string(tok[1]) + "'");
      }
      if (tok[2] != "1.0") throw fail("unsupported format version '" + std::string(tok[2]) + "'");
      have_format = true;
    } else if (key == "element") {
      if (tok.size() != 3) throw fail("malformed element line");
      Element e;
      e.name = std::string(tok[1]);
      const auto* first = tok[2].data();
      const auto* last = first + tok[2].size();
      auto [ptr, ec] = std::from_chars(first, last, e.count);
      if (ec != std::errc{} || ptr != last) throw fail("invalid element count '" + std::string(tok[2]) + "'");
      header.elements.push_back(std::move(e));
    } else if (key == "property") {
      if (header.elements.empty()) throw fail("property declared before any element");
      Property p;
      if (tok.size() == 5 && tok[1] == "list") {
        auto count_type = parse_scalar_type(tok[2]);
        auto item_type = parse_scalar_type(tok[3]);
        if (!count_type || !item_type) throw fail("unsupported list property type");
        if (*count_type == ScalarType::Float32 || *count_type == ScalarType::Float64) {
          throw fail("list count type must be integral");
        }
        p.is_list = true;
        p.count_type = *count_type;
        p.type = *item_type;
        p.name = std::string(tok[4]);
      } else if (tok.size() == 3) {
        auto type = parse_scalar_type(tok[1]);
        if (!type) throw fail("unsupported property type '" + std::string(tok[1]) + "'");
        p.type = *type;
        p.name = std::string(tok[2]);
      } else {
        throw fail("malformed property line");
      }
      header.elements.back().properties.push_back(std::move(p));
    } else {
      throw fail("unknown header keyword '" + std::string(key) + "'");
    }
  }
  if (!have_format) throw PlyError("header has no format line", cur.pos(), cur.line());
  header.body_offset = cur.pos();
  header.body_line = cur.line();
  return header;
}

struct VertexLayout {
  std::size_t element = 0;
  std::array<std::size_t, 3> xyz{};
  std::optional<std::array<std::size_t, 3>> normal;
};

VertexLayout locate_vertex(const Header& header) {
  auto missing = [&](const std::string& msg) { return PlyError(msg, header.body_offset, header.body_line); };
  std::optional<std::size_t> vertex;
  for (std::size_t e = 0; e < header.elements.size(); ++e) {
    if (header.elements[e].name == "vertex") {
      vertex = e;
      break;
    }
  }
  if (!vertex) throw missing("no vertex element");
  const Element& el = header.elements[*vertex];
  auto find = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < el.properties.size(); ++i) {
      if (el.properties[i].name == name) {
        if (el.properties[i].is_list) throw missing("vertex property '" + std::string(name) + "' is a list");
        return i;
      }
    }
    return std::nullopt;
  };
  for (const Property& p : el.properties) {
    if (p.is_list) throw missing("list property '" + p.name + "' on vertex element is not supported");
  }
  VertexLayout layout;
  layout.element = *vertex;
  const std::array<std::string_view, 3> xyz{"x", "y", "z"};
  for (std::size_t a = 0; a < 3; ++a) {
    auto idx = find(xyz[a]);
    if (!idx) throw missing("vertex element lacks property '" + std::string(xyz[a]) + "'");
    layout.xyz[a] = *idx;
  }
  auto nx = find("nx");
  auto ny = find("ny");
  auto nz = find("nz");
  if (nx && ny && nz) layout.normal = std::array<std::size_t, 3>{*nx, *ny, *nz};
  return layout;
}

void finish_normals(PointCloud& cloud) {
  if (!cloud.normals) return;
  for (Vec3& n : *cloud.normals) {
    const double len = n.norm();
    if (!(len > 0.0) || !std::isfinite(len)) {
      // A single unusable normal invalidates the set; callers fall back to estimation.
      cloud.normals.reset();
      return;
    }
    n /= len;
  }
}

PointCloud read_ascii_body(Cursor& cur, const Header& header, const VertexLayout& layout) {
  PointCloud cloud;
  for (std::size_t e = 0; e < header.elements.size(); ++e) {
    const Element& el = header.elements[e];
    const bool is_vertex = e == layout.element;
    if (is_vertex) {
      cloud.points.reserve(el.count);
      if (layout.normal) cloud.normals.emplace().reserve(el.count);
    }
    std::vector<double> values;
    for (std::uint64_t item = 0; item < el.count; ++item) {
      std::optional<std::string_view> line;
      do {
        line = cur.next_line();
        if (!line) {
          throw PlyError("truncated body: expected " + std::to_string(el.count) + " '" + el.name +
                             "' items, got " + std::to_string(item),
                         cur.pos(), cur.line());
        }
      } while (split_ws(*line).empty());
      const auto tok = split_ws(*line);
      std::size_t t = 0;
      values.clear();
      auto fail = [&](const std::string& msg) { return PlyError(msg, cur.line_start(), cur.line()); };
      auto number = [&](std::string_view s) {
        double v = 0;
        const char* first = s.data();
        const char* last = first + s.size();
        if (!s.empty() && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) throw fail("invalid number '" + std::string(s) + "'");
        return v;
      };
      for (const Property& p : el.properties) {
        if (t >= tok.size()) throw fail("too few values on '" + el.name + "' line");
        if (p.is_list) {
          const double n = number(tok[t++]);
          if (n < 0 || n != std::floor(n)) throw fail("invalid list length");
          if (t + static_cast<std::size_t>(n) > tok.size()) throw fail("list shorter than declared");
          for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) number(tok[t++]);
          values.push_back(0);
        } else {
          values.push_back(number(tok[t++]));
        }
      }
      if (t != tok.size()) throw fail("too many values on '" + el.name + "' line");
      if (is_vertex) {
        cloud.points.emplace_back(values[layout.xyz[0]], values[layout.xyz[1]], values[layout.xyz[2]]);
        if (layout.normal) {
          const auto& n = *layout.normal;
          cloud.normals->emplace_back(values[n[0]], values[n[1]], values[n[2]]);
        }
      }
    }
    if (is_vertex) break;  // later elements are irrelevant
  }
  return cloud;
}

PointCloud read_binary_body(Cursor& cur, const Header& header, const VertexLayout& layout) {
  const std::string_view data = cur.data();
  std::size_t pos = header.body_offset;
  auto need = [&](std::size_t n, const std::string& what) {
    if (data.size() - pos < n) {
      throw PlyError("truncated body while reading " + what, pos, header.body_line);
    }
  };
  PointCloud cloud;
  for (std::size_t e = 0; e < header.elements.size(); ++e) {
    const Element& el = header.elements[e];
    const bool is_vertex = e == layout.element;
    if (is_vertex) {
      cloud.points.reserve(el.count);
      if (layout.normal) cloud.normals.emplace().reserve(el.count);
    }
    std::vector<double> values(el.properties.size());
    for (std::uint64_t item = 0; item < el.count; ++item) {
      for (std::size_t pi = 0; pi < el.properties.size(); ++pi) {
        const Property& p = el.properties[pi];
        if (p.is_list) {
          need(scalar_size(p.count_type), "list length of '" + p.name + "'");
          const double n = load_scalar(p.count_type, data.data() + pos);
          pos += scalar_size(p.count_type);
          if (n < 0) throw PlyError("negative list length", pos, header.body_line);
          const std::size_t bytes = static_cast<std::size_t>(n) * scalar_size(p.type);
          need(bytes, "list '" + p.name + "'");
          pos += bytes;
        } else {
          need(scalar_size(p.type), "'" + el.name + "' property '" + p.name + "'");
          values[pi] = load_scalar(p.type, data.data() + pos);
          pos += scalar_size(p.type);
        }
      }
      if (is_vertex) {
        cloud.points.emplace_back(values[layout.xyz[0]], values[layout.xyz[1]], values[layout.xyz[2]]);
        if (layout.normal) {
          const auto& n = *layout.normal;
          cloud.normals->emplace_back(values[n[0]], values[n[1]], values[n[2]]);
        }
      }
    }
    if (is_vertex) break;
  }
  return cloud;
}

}  // namespace

PointCloud read_ply(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error(ErrorCategory::Io, "PLY: stream read failed");
  Cursor cur(data);
  const Header header = parse_header(cur);
  const VertexLayout layout = locate_vertex(header);
  PointCloud cloud = header.format == PlyFormat::Ascii ? read_ascii_body(cur, header, layout)
                                                       : read_binary_body(cur, header, layout);
  finish_normals(cloud);
  return cloud;
}

PointCloud read_ply(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Io, "cannot open '" + path.string() + "'");
  try {
    return read_ply(in);
  } catch (const PlyError& e) {
    throw PlyError(path.string() + ": " + e.detail(), e.byte_offset(), e.line());
  }
}

namespace {

template <typename T>
void store_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(bytes.data(), bytes.size());
}

}  // namespace

void write_ply(std::ostream& out, const PointCloud& cloud, PlyFormat format) {
  const bool normals = cloud.has_normals();
  if (normals && cloud.normals->size() != cloud.points.size()) {
    throw Error(ErrorCategory::InvalidArgument, "normal count does not match point count");
  }
  out << "ply\n"
      << "format " << (format == PlyFormat::Ascii ? "ascii" : "binary_little_endian") << " 1.0\n"
      << "element vertex " << cloud.points.size() << "\n"
      << "property double x\nproperty double y\nproperty double z\n";
  if (normals) out << "property double nx\nproperty double ny\nproperty double nz\n";
  out << "end_header\n";

  if (format == PlyFormat::Ascii) {
    std::array<char, 32> buf;
    auto put = [&](double v, char sep) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
      out.write(buf.data(), ptr - buf.data());
      out.put(sep);
    };
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      const Vec3& p = cloud.points[i];
      put(p.x(), ' ');
      put(p.y(), ' ');
      put(p.z(), normals ? ' ' : '\n');
      if (normals) {
        const Vec3& n = (*cloud.normals)[i];
        put(n.x(), ' ');
        put(n.y(), ' ');
        put(n.z(), '\n');
      }
    }
  } else {
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      for (int a = 0; a < 3; ++a) store_le(out, cloud.points[i][a]);
      if (normals) {
        for (int a = 0; a < 3; ++a) store_le(out, (*cloud.normals)[i][a]);
      }
    }
  }
  if (!out) throw Error(ErrorCategory::Io, "PLY: write failed");
}

void write_ply(const std::filesystem::path& path, const PointCloud& cloud, PlyFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCategory::Io, "cannot open '" + path.string() + "' for writing");
  write_ply(out, cloud, format);
}

}  // namespace pcqa
