#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "rscensus/census.hpp"
#include "rscensus/error.hpp"

namespace rsc {

namespace {

constexpr std::string_view kMagic = "rscensus-checkpoint 1";

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error(ErrorCode::InvariantViolation, "SHA-256 unavailable");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) hex << std::setw(2) << static_cast<int>(digest[i]);
  return hex.str();
}

[[noreturn]] void corrupt(const std::string& why) {
  throw Error(ErrorCode::CorruptCheckpoint, why);
}

template <typename T>
T read_field(std::istringstream& in, std::string_view key) {
  std::string name;
  T value{};
  if (!(in >> name) || name != key || !(in >> value)) {
    corrupt("expected field '" + std::string(key) + "'");
  }
  return value;
}

}  // namespace

void checkpoint_save(const Checkpoint& state, const std::filesystem::path& file) {
  std::ostringstream body;
  body << kMagic << '\n'
       << "k " << state.k << '\n'
       << "M " << state.max_exponent << '\n'
       << "prefilter " << (state.prefilter ? 1 : 0) << '\n'
       << "block_count " << state.block_count << '\n'
       << "next_block " << state.next_block << '\n'
       << "exact_tests " << state.exact_tests << '\n'
       << "prefiltered " << state.prefiltered << '\n'
       << "members " << state.members.size() << '\n';
  for (const Word& w : state.members) body << format_tuple(w) << '\n';
  const std::string text = body.str();

  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << text << "sha256 " << sha256_hex(text) << '\n';
    if (!out.flush()) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

Checkpoint checkpoint_load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) corrupt("cannot open " + file.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  const auto hash_pos = content.rfind("sha256 ");
  if (hash_pos == std::string::npos || (hash_pos > 0 && content[hash_pos - 1] != '\n')) {
    corrupt("missing content hash");
  }
  const std::string body = content.substr(0, hash_pos);
  std::string recorded = content.substr(hash_pos + 7);
  while (!recorded.empty() && (recorded.back() == '\n' || recorded.back() == '\r')) {
    recorded.pop_back();
  }
  if (recorded != sha256_hex(body)) corrupt("hash mismatch in " + file.string());

  std::istringstream lines(body);
  std::string magic;
  std::getline(lines, magic);
  if (magic != kMagic) corrupt("unsupported header '" + magic + "'");

  Checkpoint state;
  state.k = read_field<std::uint32_t>(lines, "k");
  state.max_exponent = read_field<Exponent>(lines, "M");
  state.prefilter = read_field<int>(lines, "prefilter") != 0;
  state.block_count = read_field<std::uint64_t>(lines, "block_count");
  state.next_block = read_field<std::uint64_t>(lines, "next_block");
  state.exact_tests = read_field<std::uint64_t>(lines, "exact_tests");
  state.prefiltered = read_field<std::uint64_t>(lines, "prefiltered");
  const auto count = read_field<std::uint64_t>(lines, "members");
  std::string tuple;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!(lines >> tuple)) corrupt("truncated member list");
    try {
      state.members.push_back(parse_word(tuple));
    } catch (const Error& e) {
      corrupt(std::string("bad member: ") + e.what());
    }
  }
  return state;
}

}  // namespace rsc
