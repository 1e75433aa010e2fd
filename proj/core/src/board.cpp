#include "mixvote/board.hpp"

#include <sstream>

#include "mixvote/errors.hpp"
#include "mixvote/hash.hpp"

namespace mixvote {

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::setup: return "setup";
    case Phase::creation: return "creation";
    case Phase::challenge1: return "challenge1";
    case Phase::reveal1: return "reveal1";
    case Phase::distribution: return "distribution";
    case Phase::casting: return "casting";
    case Phase::recovery: return "recovery";
    case Phase::challenge2: return "challenge2";
    case Phase::reveal2: return "reveal2";
    case Phase::tally: return "tally";
    case Phase::trace: return "trace";
  }
  return "unknown";
}

Board::Board(GroupParams gp) : gp_(std::move(gp)) {}

Bytes Board::signing_bytes(std::uint64_t seq, const std::string& author, Phase phase,
                           const Bytes& payload) {
  Enc enc;
  enc.put_u64(seq);
  enc.put_str(author);
  enc.put_u32(static_cast<std::uint32_t>(phase));
  enc.put_bytes(payload);
  return enc.take();
}

std::uint64_t Board::post(const std::string& author, Phase phase, const Bytes& payload,
                          const Signature& sig) {
  if (phase < phase_) throw Error(errc::phase_violation, "phase moved backwards");
  if (static_cast<std::uint32_t>(phase) > static_cast<std::uint32_t>(Phase::trace))
    throw Error(errc::phase_violation, "unknown phase");

  std::uint64_t seq = entries_.size();
  Bytes msg = signing_bytes(seq, author, phase, payload);

  auto it = signers_.find(author);
  mpz_class verify_key;
  bool registering = false;
  KeyRegPayload reg;
  if (it != signers_.end()) {
    verify_key = it->second;
  } else {
    // Unknown author: only a self-signed key registration is acceptable.
    Payload decoded;
    try {
      decoded = decode_payload(payload);
    } catch (const Error&) {
      throw Error(errc::unknown_actor, "unregistered author: " + author);
    }
    auto* kp = std::get_if<KeyRegPayload>(&decoded);
    if (!kp || kp->actor != author)
      throw Error(errc::unknown_actor, "unregistered author: " + author);
    verify_key = kp->sign_pub;
    registering = true;
    reg = *kp;
  }

  if (!verify_signature(gp_, verify_key, msg, sig))
    throw Error(errc::rejected_post,
                "bad signature on entry " + std::to_string(seq) + " by " + author);

  if (registering) signers_.emplace(reg.actor, reg.sign_pub);

  BBEntry entry{seq, author, phase, payload, sig};
  Enc chain_in;
  chain_in.put_bytes(seq == 0 ? Bytes{} : chain_.back());
  chain_in.put_bytes(msg);
  chain_in.put_mpz(sig.e);
  chain_in.put_mpz(sig.s);
  chain_.push_back(tagged_hash(gp_.hash_algo, tag::board, chain_in.bytes()));
  entries_.push_back(std::move(entry));
  phase_ = phase;
  return seq;
}

std::uint64_t Board::sign_and_post(const std::string& author, Phase phase,
                                   const Bytes& payload, const KeyPair& key) {
  Bytes msg = signing_bytes(next_seq(), author, phase, payload);
  return post(author, phase, payload, sign_message(gp_, key, msg));
}

Bytes Board::content_hash(std::uint64_t up_to) const {
  if (up_to >= chain_.size())
    throw Error(errc::transcript_malformed, "content hash beyond board end");
  return chain_[up_to];
}

bool Board::verify_board() const {
  try {
    Board fresh(gp_);
    for (const BBEntry& e : entries_) {
      std::uint64_t seq = fresh.post(e.author, e.phase, e.payload, e.sig);
      if (seq != e.seq) return false;
    }
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (fresh.chain_[i] != chain_[i]) return false;
  } catch (const Error&) {
    return false;
  }
  return true;
}

std::string export_transcript(const Transcript& transcript) {
  std::ostringstream out;
  out << "# mixvote-transcript v1\n";
  out << "# hash " << transcript.gp.hash_algo << "\n";
  out << "# group p=" << mpz_to_hex(transcript.gp.p) << " q=" << mpz_to_hex(transcript.gp.q)
      << " c=" << transcript.gp.c << " g=" << mpz_to_hex(transcript.gp.g)
      << " h=" << mpz_to_hex(transcript.gp.h) << "\n";
  out << "# election n=" << transcript.n << " lambda=" << transcript.lambda << "\n";
  for (const BBEntry& e : transcript.entries) {
    out << e.seq << '\t' << e.author << '\t' << static_cast<std::uint32_t>(e.phase) << '\t'
        << to_hex(e.payload) << '\t' << mpz_to_hex(e.sig.e) << '\t' << mpz_to_hex(e.sig.s)
        << '\n';
  }
  return out.str();
}

static std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

static std::uint64_t parse_u64(const std::string& s) {
  if (s.empty()) throw Error(errc::transcript_malformed, "empty number");
  std::uint64_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw Error(errc::transcript_malformed, "bad number: " + s);
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  return v;
}

// "key=value" pairs on a header line, after the marker word.
static std::map<std::string, std::string> header_fields(const std::string& line,
                                                        const std::string& marker) {
  std::map<std::string, std::string> out;
  std::string rest = line.substr(marker.size());
  for (const std::string& part : split(rest, ' ')) {
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw Error(errc::transcript_malformed, "bad header field: " + part);
    out[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return out;
}

Transcript import_transcript(const std::string& text) {
  Transcript t;
  bool have_version = false, have_hash = false, have_group = false, have_election = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line == "# mixvote-transcript v1") {
        have_version = true;
      } else if (line.rfind("# hash ", 0) == 0) {
        t.gp.hash_algo = line.substr(7);
        have_hash = true;
      } else if (line.rfind("# group ", 0) == 0) {
        auto f = header_fields(line, "# group ");
        t.gp.p = mpz_from_hex(f.at("p"));
        t.gp.q = mpz_from_hex(f.at("q"));
        t.gp.c = static_cast<std::uint32_t>(parse_u64(f.at("c")));
        t.gp.g = mpz_from_hex(f.at("g"));
        t.gp.h = mpz_from_hex(f.at("h"));
        have_group = true;
      } else if (line.rfind("# election ", 0) == 0) {
        auto f = header_fields(line, "# election ");
        t.n = static_cast<std::uint32_t>(parse_u64(f.at("n")));
        t.lambda = static_cast<std::uint32_t>(parse_u64(f.at("lambda")));
        have_election = true;
      } else {
        throw Error(errc::transcript_malformed, "unknown header line");
      }
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 6) throw Error(errc::transcript_malformed, "entry needs 6 columns");
    BBEntry e;
    e.seq = parse_u64(cols[0]);
    e.author = cols[1];
    std::uint64_t phase = parse_u64(cols[2]);
    if (phase > static_cast<std::uint64_t>(Phase::trace))
      throw Error(errc::transcript_malformed, "phase out of range");
    e.phase = static_cast<Phase>(phase);
    e.payload = from_hex(cols[3]);
    e.sig.e = mpz_from_hex(cols[4]);
    e.sig.s = mpz_from_hex(cols[5]);
    t.entries.push_back(std::move(e));
  }
  if (!have_version || !have_hash || !have_group || !have_election)
    throw Error(errc::transcript_malformed, "missing transcript header");
  return t;
}

Board replay_transcript(const Transcript& transcript) {
  Board board(transcript.gp);
  for (const BBEntry& e : transcript.entries) {
    std::uint64_t seq = board.post(e.author, e.phase, e.payload, e.sig);
    if (seq != e.seq)
      throw Error(errc::transcript_malformed, "sequence numbers not contiguous");
  }
  return board;
}

}  // namespace mixvote
