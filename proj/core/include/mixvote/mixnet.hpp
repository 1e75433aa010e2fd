#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mixvote/group.hpp"
#include "mixvote/nizk.hpp"
#include "mixvote/rng.hpp"

namespace mixvote {

// One ballot slot travelling the creation pass: an identifier onion (standard
// layered ElGamal) and a rotation onion (exponential ElGamal accumulating the
// servers' rotation offsets).
struct OnionPair {
  Ciphertext id_onion;
  Ciphertext rot_onion;
  bool operator==(const OnionPair&) const = default;
};

// Creation-pass list: every slot occupied. stage 0 is the sender's list,
// stage i the output of server i.
struct PairList {
  std::uint32_t stage = 0;
  std::vector<OnionPair> slots;
};

// Recovery-pass list: slots are optional because only cast positions carry a
// vote onion.
struct VoteList {
  std::uint32_t stage = 0;
  std::vector<std::optional<Ciphertext>> slots;
};

// Everything one mix server keeps off the record: its decryption key, its
// permutation, its per-slot rotation offsets, commitment salts, and the
// randomizers it used (needed later to answer audit challenges).
struct MixServerSecret {
  std::uint32_t index = 0;  // 1-based position in the cascade
  KeyPair enc_key;
  std::vector<std::uint32_t> perm;       // input slot j -> output slot perm[j]
  std::vector<std::uint32_t> rotations;  // per input slot, in [0, c)
  std::vector<Bytes> perm_salts;
  std::vector<Bytes> rot_salts;
  std::vector<mpz_class> k_id;                  // creation randomizers by input slot
  std::vector<mpz_class> k_rot;
  std::vector<std::optional<mpz_class>> k_rec;  // recovery randomizers by input slot
};

MixServerSecret make_server_secret(const GroupParams& gp, std::uint32_t index,
                                   std::uint32_t n, HashDrbg& rng);

// Sender-side pair for identifier id: the id onion under the full key product
// (all servers plus the final decryptor) and the trivial rotation onion (1, 1),
// the zero-randomness encryption of rotation 0.
OnionPair build_initial_pair(const GroupParams& gp, const mpz_class& joint_key,
                             std::uint32_t id, std::uint32_t n, const mpz_class& k_id);

// t: strip this server's layer, re-blind under the keys still ahead.
//   (a, b) -> (a·R^k / b^x, b·g^k)   with R the product of remaining keys
Ciphertext transform_decrypting(const GroupParams& gp, const mpz_class& x,
                                const mpz_class& remaining, const Ciphertext& in,
                                const mpz_class& k);

// Same, plus an h^l factor folded into the message component.
Ciphertext transform_computing(const GroupParams& gp, const mpz_class& x,
                               const mpz_class& remaining, const Ciphertext& in,
                               const mpz_class& k, std::int64_t l);

// One full server step over a creation list: permute, strip, re-blind, and add
// the slot rotation into the rotation onion. Randomizers are drawn from rng
// and recorded in secret for later audits.
PairList server_process_creation(const GroupParams& gp, MixServerSecret& secret,
                                 const mpz_class& remaining, const PairList& in,
                                 HashDrbg& rng);

// Recovery step: same permutation, but rotations are subtracted so the net
// offset cancels against the creation pass.
VoteList server_process_recovery(const GroupParams& gp, MixServerSecret& secret,
                                 const mpz_class& remaining, const VoteList& in,
                                 HashDrbg& rng);

// Voter-side vote onion: exponential encryption of the marked position under
// the mix cascade's key product.
Ciphertext build_vote_onion(const GroupParams& gp, const mpz_class& mix_joint_key,
                            std::uint32_t ev, const mpz_class& k);

// Final decryptor's view of one creation output slot: both plaintexts plus
// proofs that the claimed values are what the onions contain.
struct OpenedPair {
  std::uint32_t id = 0;
  std::uint32_t sh = 0;
  EqDlogProof id_proof;
  EqDlogProof rot_proof;
};

OpenedPair ec2_open_pair(const GroupParams& gp, const KeyPair& key, const OnionPair& pair,
                         const DecodeTable& table, HashDrbg& nonce_rng);

}  // namespace mixvote
