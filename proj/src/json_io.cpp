#include "uas/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "uas/errors.hpp"

namespace uas {

using nlohmann::json;

namespace {

constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("malformed JSON");
  return j;
}

}  // namespace

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    std::uint32_t chunk = bytes[i] << 16;
    int have = 1;
    if (i + 1 < bytes.size()) {
      chunk |= bytes[i + 1] << 8;
      ++have;
    }
    if (i + 2 < bytes.size()) {
      chunk |= bytes[i + 2];
      ++have;
    }
    out += kB64Alphabet[(chunk >> 18) & 63];
    out += kB64Alphabet[(chunk >> 12) & 63];
    out += have > 1 ? kB64Alphabet[(chunk >> 6) & 63] : '=';
    out += have > 2 ? kB64Alphabet[chunk & 63] : '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<std::uint8_t> out;
  std::uint32_t chunk = 0;
  int have = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = value_of(c);
    if (v < 0) throw ValidationError("invalid base64 character");
    chunk = (chunk << 6) | static_cast<std::uint32_t>(v);
    if (++have == 4) {
      out.push_back(static_cast<std::uint8_t>((chunk >> 16) & 0xff));
      out.push_back(static_cast<std::uint8_t>((chunk >> 8) & 0xff));
      out.push_back(static_cast<std::uint8_t>(chunk & 0xff));
      have = 0;
      chunk = 0;
    }
  }
  if (have == 2) {
    out.push_back(static_cast<std::uint8_t>((chunk >> 4) & 0xff));
  } else if (have == 3) {
    out.push_back(static_cast<std::uint8_t>((chunk >> 10) & 0xff));
    out.push_back(static_cast<std::uint8_t>((chunk >> 2) & 0xff));
  } else if (have != 0) {
    throw ValidationError("truncated base64 payload");
  }
  return out;
}

std::string encode_bit_matrix(const BitMatrix& m) {
  std::size_t bits = static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols());
  std::vector<std::uint8_t> bytes((bits + 7) / 8, 0);
  std::size_t at = 0;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c, ++at)
      if (m.get(r, c)) bytes[at >> 3] |= static_cast<std::uint8_t>(1u << (at & 7));
  return base64_encode(bytes);
}

BitMatrix decode_bit_matrix(const std::string& text, int rows, int cols) {
  std::vector<std::uint8_t> bytes = base64_decode(text);
  std::size_t bits = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (bytes.size() != (bits + 7) / 8)
    throw ValidationError("bit matrix payload has the wrong length");
  BitMatrix m(rows, cols);
  std::size_t at = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c, ++at)
      if ((bytes[at >> 3] >> (at & 7)) & 1) m.set(r, c, true);
  return m;
}

std::string encode_bit_vec(const BitVec& v) {
  std::vector<std::uint8_t> bytes((static_cast<std::size_t>(v.size()) + 7) / 8, 0);
  for (int i = 0; i < v.size(); ++i)
    if (v.get(i)) bytes[static_cast<std::size_t>(i) >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
  return base64_encode(bytes);
}

BitVec decode_bit_vec(const std::string& text, int size) {
  std::vector<std::uint8_t> bytes = base64_decode(text);
  if (bytes.size() != (static_cast<std::size_t>(size) + 7) / 8)
    throw ValidationError("bit vector payload has the wrong length");
  BitVec v(size);
  for (int i = 0; i < size; ++i)
    if ((bytes[static_cast<std::size_t>(i) >> 3] >> (i & 7)) & 1) v.set(i, true);
  return v;
}

std::string structure_to_json(const AccessStructure& structure) {
  json j;
  j["m"] = structure.participant_count();
  json sets = json::array();
  for (Subset s : structure.minimal_sets()) sets.push_back(subset_to_indices(s));
  j["minimal_sets"] = sets;
  return j.dump(2) + "\n";
}

AccessStructure structure_from_json(const std::string& text, bool strict) {
  json j = parse_json(text);
  if (!j.contains("m") || !j.contains("minimal_sets"))
    throw ValidationError("structure file needs fields 'm' and 'minimal_sets'");
  int m = j["m"].get<int>();
  std::vector<Subset> sets;
  for (const auto& arr : j["minimal_sets"]) {
    std::vector<int> indices;
    for (const auto& v : arr) {
      int p = v.get<int>();
      if (p < 0 || p >= m) throw ValidationError("participant index out of range in structure file");
      indices.push_back(p);
    }
    sets.push_back(subset_from_indices(indices));
  }
  return AccessStructure(m, std::move(sets), strict);
}

std::string scheme_to_json(const LinearScheme& scheme) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["seed_dim"] = scheme.seed_dim;
  j["secret_dim"] = scheme.secret_dim;
  j["secret_map"] = encode_bit_matrix(scheme.secret_map);
  json rows = json::array(), maps = json::array();
  for (const auto& m : scheme.share_maps) {
    rows.push_back(m.rows());
    maps.push_back(encode_bit_matrix(m));
  }
  j["share_rows"] = rows;
  j["share_maps"] = maps;
  if (scheme.public_rows.rows() > 0) {
    j["public_row_count"] = scheme.public_rows.rows();
    j["public_map"] = encode_bit_matrix(scheme.public_rows);
  }
  json blocks = json::array();
  for (const SeedBlock& b : scheme.seed_blocks)
    blocks.push_back({{"label", b.label}, {"offset", b.offset}, {"length", b.length}});
  j["seed_blocks"] = blocks;
  return j.dump(2) + "\n";
}

LinearScheme scheme_from_json(const std::string& text) {
  json j = parse_json(text);
  for (const char* field : {"schema_version", "seed_dim", "secret_dim", "secret_map",
                            "share_rows", "share_maps"})
    if (!j.contains(field))
      throw ValidationError(std::string("scheme file missing field '") + field + "'");
  if (j["schema_version"].get<int>() != kSchemaVersion)
    throw ValidationError("unsupported scheme schema version");
  LinearScheme s;
  s.seed_dim = j["seed_dim"].get<int>();
  s.secret_dim = j["secret_dim"].get<int>();
  s.secret_map = decode_bit_matrix(j["secret_map"].get<std::string>(), s.secret_dim, s.seed_dim);
  const auto& rows = j["share_rows"];
  const auto& maps = j["share_maps"];
  if (rows.size() != maps.size())
    throw ValidationError("scheme file: share_rows and share_maps disagree");
  for (std::size_t p = 0; p < maps.size(); ++p)
    s.share_maps.push_back(
        decode_bit_matrix(maps[p].get<std::string>(), rows[p].get<int>(), s.seed_dim));
  if (j.contains("public_map"))
    s.public_rows = decode_bit_matrix(j["public_map"].get<std::string>(),
                                      j["public_row_count"].get<int>(), s.seed_dim);
  else
    s.public_rows = BitMatrix(0, s.seed_dim);
  if (j.contains("seed_blocks"))
    for (const auto& b : j["seed_blocks"])
      s.seed_blocks.push_back(
          {b["label"].get<std::string>(), b["offset"].get<int>(), b["length"].get<int>()});
  s.validate();
  return s;
}

std::string transcript_to_json(const ShareTranscript& t) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["secret_dim"] = t.secret_dim;
  j["secret"] = encode_bit_vec(t.secret);
  json sizes = json::array(), shares = json::array();
  for (const BitVec& s : t.shares) {
    sizes.push_back(s.size());
    shares.push_back(encode_bit_vec(s));
  }
  j["share_sizes"] = sizes;
  j["shares"] = shares;
  return j.dump(2) + "\n";
}

ShareTranscript transcript_from_json(const std::string& text) {
  json j = parse_json(text);
  for (const char* field : {"schema_version", "secret_dim", "secret", "share_sizes", "shares"})
    if (!j.contains(field))
      throw ValidationError(std::string("transcript missing field '") + field + "'");
  ShareTranscript t;
  t.secret_dim = j["secret_dim"].get<int>();
  t.secret = decode_bit_vec(j["secret"].get<std::string>(), t.secret_dim);
  const auto& sizes = j["share_sizes"];
  const auto& shares = j["shares"];
  if (sizes.size() != shares.size())
    throw ValidationError("transcript: share_sizes and shares disagree");
  for (std::size_t i = 0; i < shares.size(); ++i)
    t.shares.push_back(decode_bit_vec(shares[i].get<std::string>(), sizes[i].get<int>()));
  return t;
}

std::string certificate_to_json(const Certificate& cert) {
  json j;
  j["A0"] = subset_to_indices(cert.a0);
  j["b"] = cert.b_sequence;
  json cs = json::array();
  for (Subset c : cert.c_sequence) cs.push_back(subset_to_indices(c));
  j["C"] = cs;
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  json j = parse_json(text);
  for (const char* field : {"A0", "b", "C"})
    if (!j.contains(field))
      throw ValidationError(std::string("certificate missing field '") + field + "'");
  Certificate cert;
  std::vector<int> a0;
  for (const auto& v : j["A0"]) a0.push_back(v.get<int>());
  cert.a0 = subset_from_indices(a0);
  for (const auto& v : j["b"]) cert.b_sequence.push_back(v.get<int>());
  for (const auto& arr : j["C"]) {
    std::vector<int> c;
    for (const auto& v : arr) c.push_back(v.get<int>());
    cert.c_sequence.push_back(subset_from_indices(c));
  }
  return cert;
}

std::string bound_report_to_json(const BoundReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["structure"] = report.structure_id;
  if (report.lp_bound) j["lp_bound"] = to_fraction_string(*report.lp_bound);
  if (report.lp_bound_float) {
    j["lp_bound_float"] = *report.lp_bound_float;
    j["lp_bound_tolerance"] = 1e-6;
  }
  if (report.certificate_bound)
    j["certificate_bound"] = to_fraction_string(*report.certificate_bound);
  j["best"] = to_fraction_string(report.best());
  j["best_decimal"] = to_double(report.best());
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open file: " + path);
  std::stringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open file for writing: " + path);
  file << text;
  if (!file) throw IoError("failed writing file: " + path);
}

void save_structure(const AccessStructure& structure, const std::string& path) {
  write_text_file(path, structure_to_json(structure));
}
AccessStructure load_structure(const std::string& path, bool strict) {
  return structure_from_json(read_text_file(path), strict);
}
void save_scheme(const LinearScheme& scheme, const std::string& path) {
  write_text_file(path, scheme_to_json(scheme));
}
LinearScheme load_scheme(const std::string& path) {
  return scheme_from_json(read_text_file(path));
}
void save_transcript(const ShareTranscript& transcript, const std::string& path) {
  write_text_file(path, transcript_to_json(transcript));
}
ShareTranscript load_transcript(const std::string& path) {
  return transcript_from_json(read_text_file(path));
}
void save_certificate(const Certificate& cert, const std::string& path) {
  write_text_file(path, certificate_to_json(cert));
}
Certificate load_certificate(const std::string& path) {
  return certificate_from_json(read_text_file(path));
}

}  // namespace uas
