#pragma once

#include <string>
#include <vector>

#include "uas/access_structure.hpp"
#include "uas/bounds.hpp"
#include "uas/scheme.hpp"

namespace uas {

inline constexpr int kSchemaVersion = 1;

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

// Bits packed row-major (bit index r*cols + c, least significant bit
// of each byte first), then base64.
std::string encode_bit_matrix(const BitMatrix& m);
BitMatrix decode_bit_matrix(const std::string& text, int rows, int cols);
std::string encode_bit_vec(const BitVec& v);
BitVec decode_bit_vec(const std::string& text, int size);

// {"m": int, "minimal_sets": [[int,...],...]}
std::string structure_to_json(const AccessStructure& structure);
AccessStructure structure_from_json(const std::string& text, bool strict = false);
void save_structure(const AccessStructure& structure, const std::string& path);
AccessStructure load_structure(const std::string& path, bool strict = false);

std::string scheme_to_json(const LinearScheme& scheme);
LinearScheme scheme_from_json(const std::string& text);
void save_scheme(const LinearScheme& scheme, const std::string& path);
LinearScheme load_scheme(const std::string& path);

// One deal: the secret and every participant's share.
struct ShareTranscript {
  int secret_dim = 0;
  BitVec secret;
  std::vector<BitVec> shares;
};

std::string transcript_to_json(const ShareTranscript& transcript);
ShareTranscript transcript_from_json(const std::string& text);
void save_transcript(const ShareTranscript& transcript, const std::string& path);
ShareTranscript load_transcript(const std::string& path);

// {"A0":[...], "b":[...], "C":[[...],...]}
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);
void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

std::string bound_report_to_json(const BoundReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace uas
