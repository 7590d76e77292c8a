#include "qpcolor/io.hpp"

#include <cstring>
#include <fstream>

#include <openssl/evp.h>

namespace qpc {

namespace {

constexpr std::uint16_t kFormatVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
  for (int i = 0; i < 2; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u64(out, bits);
}

struct Reader {
  std::string_view data;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > data.size()) throw CorruptFileError("truncated file");
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    const std::string_view out = data.substr(pos, n);
    pos += n;
    return out;
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  void done() const {
    if (pos != data.size()) throw CorruptFileError("trailing bytes after payload");
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path);
  return data;
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("cannot write " + path);
}

void check_magic(Reader& r, std::string_view magic) {
  if (r.bytes(4) != magic) throw CorruptFileError("bad magic, not a " + std::string(magic) + " file");
}

void check_version(Reader& r) {
  const std::uint16_t v = r.u16();
  if (v != kFormatVersion) {
    throw UnsupportedVersionError("unsupported version " + std::to_string(v));
  }
}

std::array<unsigned char, 32> read_digest(Reader& r) {
  const std::string_view raw = r.bytes(32);
  std::array<unsigned char, 32> d{};
  std::memcpy(d.data(), raw.data(), 32);
  return d;
}

// Sidecar text is the digest preimage: the binary commits to the exact
// parameter bytes sitting next to it.
std::string load_sidecar_checked(const std::string& path,
                                 const std::array<unsigned char, 32>& digest) {
  const std::string side = read_file(sidecar_path(path));
  if (sha256_bytes(side) != digest) {
    throw CorruptFileError("parameter digest mismatch for " + path);
  }
  return side;
}

nlohmann::json parse_sidecar(const std::string& text, const std::string& path) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw CorruptFileError("unparseable sidecar for " + path);
  }
}

void pack_triangle(const BitMatrix& m, std::string& out) {
  const std::size_t n = m.size();
  std::uint64_t word = 0;
  int fill = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.test(i, j)) word |= std::uint64_t{1} << fill;
      if (++fill == 64) {
        put_u64(out, word);
        word = 0;
        fill = 0;
      }
    }
  }
  if (fill > 0) put_u64(out, word);
}

void unpack_triangle(Reader& r, BitMatrix& m) {
  const std::size_t n = m.size();
  std::uint64_t word = 0;
  int avail = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (avail == 0) {
        word = r.u64();
        avail = 64;
      }
      if (word & 1u) m.set_pair(i, j);
      word >>= 1;
      --avail;
    }
  }
}

nlohmann::json info_to_json(const ConstructionInfo& info) {
  return {{"construction", info.construction}, {"k", info.k},       {"t", info.t},
          {"eta", info.eta},                   {"seed", info.seed}, {"mode", info.mode},
          {"sphere_sizes", info.sphere_sizes}};
}

ConstructionInfo info_from_json(const nlohmann::json& j) {
  ConstructionInfo info;
  info.construction = j.at("construction").get<int>();
  info.k = j.at("k").get<int>();
  info.t = j.at("t").get<int>();
  info.eta = j.at("eta").get<double>();
  info.seed = j.at("seed").get<std::uint64_t>();
  info.mode = j.at("mode").get<std::string>();
  info.sphere_sizes = j.at("sphere_sizes").get<std::vector<std::size_t>>();
  return info;
}

}  // namespace

std::string sidecar_path(const std::string& path) { return path + ".json"; }

std::array<unsigned char, 32> sha256_bytes(std::string_view data) {
  std::array<unsigned char, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw IoError("sha256 failure");
  }
  return out;
}

std::string sha256_hex(std::string_view data) {
  static const char* hex = "0123456789abcdef";
  const auto digest = sha256_bytes(data);
  std::string out;
  out.reserve(64);
  for (unsigned char b : digest) {
    out.push_back(hex[b >> 4]);
    out.push_back(hex[b & 0xf]);
  }
  return out;
}

void save_family(const SphereFamily& family, const std::string& path) {
  const FamilyParams& p = family.params();
  const nlohmann::json side{{"kind", "points"},  {"p", p.p},
                            {"q", p.q},          {"k", p.k},
                            {"t", p.t},          {"eta", p.eta},
                            {"seed", p.seed},    {"mode", to_string(p.mode)},
                            {"sizes", family.sizes()}};
  const std::string side_text = side.dump(2) + "\n";
  std::string out;
  out += "SPHR";
  put_u16(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(p.k));
  put_u64(out, family.total());
  put_u64(out, p.seed);
  const auto digest = sha256_bytes(side_text);
  out.append(reinterpret_cast<const char*>(digest.data()), digest.size());
  for (double c : family.raw_coords()) put_f64(out, c);
  write_file(sidecar_path(path), side_text);
  write_file(path, out);
}

SphereFamily load_family(const std::string& path) {
  const std::string data = read_file(path);
  Reader r{data};
  check_magic(r, "SPHR");
  check_version(r);
  const std::uint32_t k = r.u32();
  const std::uint64_t count = r.u64();
  const std::uint64_t seed = r.u64();
  const auto digest = read_digest(r);
  std::vector<double> coords(count * 2 * k);
  for (double& c : coords) c = r.f64();
  r.done();

  const nlohmann::json side = parse_sidecar(load_sidecar_checked(path, digest), path);
  try {
    FamilyParams params;
    params.p = side.at("p").get<int>();
    params.q = side.at("q").get<int>();
    params.k = side.at("k").get<int>();
    params.t = side.at("t").get<int>();
    params.eta = side.at("eta").get<double>();
    params.seed = side.at("seed").get<std::uint64_t>();
    params.mode = point_mode_from_string(side.at("mode").get<std::string>());
    auto sizes = side.at("sizes").get<std::vector<std::size_t>>();
    std::size_t total = 0;
    for (std::size_t s : sizes) total += s;
    if (side.at("kind").get<std::string>() != "points" ||
        params.k != static_cast<int>(k) || params.seed != seed || total != count) {
      throw CorruptFileError("sidecar disagrees with binary header in " + path);
    }
    return SphereFamily::from_raw(params, std::move(sizes), std::move(coords));
  } catch (const nlohmann::json::exception&) {
    throw CorruptFileError("sidecar missing fields for " + path);
  }
}

void save_coloring(const SetColoring& coloring, const std::string& path) {
  const nlohmann::json side{{"kind", "coloring"},
                            {"n", coloring.n},
                            {"p", coloring.p},
                            {"q", coloring.q},
                            {"info", info_to_json(coloring.info)}};
  const std::string side_text = side.dump(2) + "\n";
  std::string out;
  out += "QPCO";
  put_u16(out, kFormatVersion);
  put_u64(out, coloring.n);
  put_u16(out, static_cast<std::uint16_t>(coloring.p));
  put_u16(out, static_cast<std::uint16_t>(coloring.q));
  const std::uint32_t flags = coloring.origins.empty() ? 0u : 1u;
  put_u32(out, flags);
  const auto digest = sha256_bytes(side_text);
  out.append(reinterpret_cast<const char*>(digest.data()), digest.size());
  for (const BitMatrix& m : coloring.color) pack_triangle(m, out);
  if (flags & 1u) {
    for (const VertexOrigin& o : coloring.origins) {
      put_u32(out, static_cast<std::uint32_t>(o.sphere));
      put_u64(out, o.index);
    }
  }
  write_file(sidecar_path(path), side_text);
  write_file(path, out);
}

SetColoring load_coloring(const std::string& path) {
  const std::string data = read_file(path);
  Reader r{data};
  check_magic(r, "QPCO");
  check_version(r);
  const std::uint64_t n = r.u64();
  const int p = r.u16();
  const int q = r.u16();
  const std::uint32_t flags = r.u32();
  const auto digest = read_digest(r);
  if (p < 1 || p >= q) throw CorruptFileError("invalid class counts in " + path);
  SetColoring coloring(n, p, q);
  for (BitMatrix& m : coloring.color) unpack_triangle(r, m);
  if (flags & 1u) {
    coloring.origins.resize(n);
    for (VertexOrigin& o : coloring.origins) {
      o.sphere = static_cast<int>(r.u32());
      o.index = r.u64();
    }
  }
  r.done();

  const nlohmann::json side = parse_sidecar(load_sidecar_checked(path, digest), path);
  try {
    if (side.at("kind").get<std::string>() != "coloring" ||
        side.at("n").get<std::uint64_t>() != n || side.at("p").get<int>() != p ||
        side.at("q").get<int>() != q) {
      throw CorruptFileError("sidecar disagrees with binary header in " + path);
    }
    coloring.info = info_from_json(side.at("info"));
  } catch (const nlohmann::json::exception&) {
    throw CorruptFileError("sidecar missing fields for " + path);
  }
  return coloring;
}

void save_graph(const SimpleGraph& g, const std::string& path) {
  const nlohmann::json side{{"kind", "graph"}, {"n", g.n}, {"label", g.label}};
  const std::string side_text = side.dump(2) + "\n";
  std::string out;
  out += "QPGR";
  put_u16(out, kFormatVersion);
  put_u64(out, g.n);
  put_u32(out, static_cast<std::uint32_t>(g.label.size()));
  out += g.label;
  const auto digest = sha256_bytes(side_text);
  out.append(reinterpret_cast<const char*>(digest.data()), digest.size());
  pack_triangle(g.adj, out);
  write_file(sidecar_path(path), side_text);
  write_file(path, out);
}

SimpleGraph load_graph(const std::string& path) {
  const std::string data = read_file(path);
  Reader r{data};
  check_magic(r, "QPGR");
  check_version(r);
  const std::uint64_t n = r.u64();
  const std::uint32_t label_len = r.u32();
  const std::string label(r.bytes(label_len));
  const auto digest = read_digest(r);
  SimpleGraph g(n, label);
  unpack_triangle(r, g.adj);
  r.done();

  const nlohmann::json side = parse_sidecar(load_sidecar_checked(path, digest), path);
  try {
    if (side.at("kind").get<std::string>() != "graph" ||
        side.at("n").get<std::uint64_t>() != n ||
        side.at("label").get<std::string>() != label) {
      throw CorruptFileError("sidecar disagrees with binary header in " + path);
    }
  } catch (const nlohmann::json::exception&) {
    throw CorruptFileError("sidecar missing fields for " + path);
  }
  return g;
}

void save_report(const nlohmann::json& report, const std::string& path) {
  write_file(path, report.dump(2) + "\n");
}

nlohmann::json load_report(const std::string& path) {
  const std::string data = read_file(path);
  try {
    return nlohmann::json::parse(data);
  } catch (const nlohmann::json::exception&) {
    throw CorruptFileError("unparseable report " + path);
  }
}

}  // namespace qpc
