// Copyright 2026 The HIDM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "hidm/common/error.hpp"
#include "hidm/ledgers/ati.hpp"
#include "hidm/ledgers/audit.hpp"
#include "hidm/ledgers/chain.hpp"
#include "hidm/ledgers/did.hpp"
#include "test_util.hpp"

namespace hidm {
namespace {

namespace fs = std::filesystem;
using testing::rng_for;

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("hidm-ledgers-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

struct Controller {
  SchnorrKeypair key;
  DidDocument doc;
};

Controller make_controller(const std::string& did, Rng& rng) {
  const SchnorrGroup& g = SchnorrGroup::standard();
  Controller c{SchnorrKeypair::generate(g, rng), {}};
  c.doc.did = did;
  c.doc.keys.push_back(DidKey{"#auth-1", std::string(did_keys::kAuthentication), std::string(did_keys::kSchnorr),
                              bigint_to_bytes(c.key.y, g.element_size())});
  return c;
}

// ---- hash chain ------------------------------------------------------------

TEST(HashChain, AppendVerifyAndLineRoundTrip) {
  HashChain chain;
  for (int i = 0; i < 10; ++i) chain.append({{"n", i}});
  EXPECT_EQ(chain.size(), 10u);
  EXPECT_TRUE(chain.verify());
  auto entries = chain.entries();
  EXPECT_EQ(entries.back().entry_hash, chain.head());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    EXPECT_EQ(entries[i].index, i);
    if (i > 0) EXPECT_EQ(entries[i].prev_hash, entries[i - 1].entry_hash);
    EXPECT_EQ(entries[i].entry_hash, chain_entry_hash(entries[i].prev_hash, entries[i].payload));
    auto back = LedgerEntry::from_line(entries[i].to_line());
    ASSERT_TRUE(back);
    EXPECT_EQ(back->to_line(), entries[i].to_line());
  }
  entries[4].payload = R"({"n":40})";
  EXPECT_FALSE(chain_verify(entries));
  EXPECT_FALSE(LedgerEntry::from_line("not json"));
}

TEST(HashChain, EveryByteFlipOfPersistedFileDetected) {
  fs::path dir = scratch_dir("flip");
  fs::path file = dir / "chain.jsonl";
  {
    HashChain chain(file);
    for (int i = 0; i < 4; ++i) chain.append({{"event", "e" + std::to_string(i)}, {"value", i * 7}});
  }
  ChainFileReport ok = verify_chain_file(file);
  ASSERT_TRUE(ok.ok) << ok.error;
  EXPECT_EQ(ok.entries, 4u);
  const std::string original = read_file(file);
  std::size_t detected = 0, flips = 0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (original[i] == '\n') continue;
    std::string mutated = original;
    mutated[i] = static_cast<char>(mutated[i] ^ 0x01);
    write_file(file, mutated);
    ++flips;
    detected += !verify_chain_file(file).ok;
  }
  EXPECT_EQ(detected, flips);
  write_file(file, original);
  EXPECT_TRUE(verify_chain_file(file).ok);
}

TEST(HashChain, TruncationAndMissingFilesDetected) {
  fs::path dir = scratch_dir("truncate");
  fs::path file = dir / "chain.jsonl";
  {
    HashChain chain(file);
    for (int i = 0; i < 3; ++i) chain.append({{"n", i}});
  }
  std::string text = read_file(file);
  std::string without_last = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
  write_file(file, without_last);
  EXPECT_FALSE(verify_chain_file(file).ok);
  write_file(file, "");
  EXPECT_FALSE(verify_chain_file(file).ok);
  write_file(file, text);
  fs::remove(chain_head_path(file));
  EXPECT_FALSE(verify_chain_file(file).ok);
  EXPECT_FALSE(verify_chain_file(dir / "absent.jsonl").ok);
}

// ---- DID ledger ------------------------------------------------------------

TEST(DidLedger, RegisterResolveUpdate) {
  auto rng = rng_for("did");
  DidLedger ledger;
  Controller c = make_controller("did:hidm:test:a", *rng);
  ledger.register_document(c.doc, did_prove(c.doc, "#auth-1", c.key, *rng));
  auto resolved = ledger.resolve("did:hidm:test:a");
  ASSERT_TRUE(resolved);
  EXPECT_EQ(*resolved, c.doc);
  EXPECT_FALSE(ledger.resolve("did:hidm:test:b"));
  EXPECT_EQ(DidDocument::from_json(c.doc.to_json()), c.doc);

  DidDocument v2 = c.doc;
  v2.version = 2;
  v2.endpoints.push_back("https://a.example/hidm");
  ledger.register_document(v2, did_prove(v2, "#auth-1", c.key, *rng));
  EXPECT_EQ(ledger.resolve("did:hidm:test:a")->version, 2u);
  EXPECT_TRUE(ledger.chain().verify());
}

TEST(DidLedger, UnauthorizedChangesRejected) {
  auto rng = rng_for("did-unauthorized");
  DidLedger ledger;
  Controller c = make_controller("did:hidm:test:a", *rng);
  Controller stranger = make_controller("did:hidm:test:a", *rng);
  ledger.register_document(c.doc, did_prove(c.doc, "#auth-1", c.key, *rng));

  auto expect_unauthorized = [&](const DidDocument& doc, const DidProof& proof) {
    try {
      ledger.register_document(doc, proof);
      ADD_FAILURE() << "update accepted";
    } catch (const ProtocolError& e) {
      EXPECT_EQ(e.reason(), Reason::kUnauthorizedUpdate);
    }
  };
  DidDocument takeover = stranger.doc;
  takeover.version = 2;
  expect_unauthorized(takeover, did_prove(takeover, "#auth-1", stranger.key, *rng));
  DidDocument skip = c.doc;
  skip.version = 3;
  expect_unauthorized(skip, did_prove(skip, "#auth-1", c.key, *rng));
  DidDocument replay = c.doc;
  expect_unauthorized(replay, did_prove(replay, "#auth-1", c.key, *rng));
  Controller fresh = make_controller("did:hidm:test:b", *rng);
  DidDocument late = fresh.doc;
  late.version = 5;
  expect_unauthorized(late, did_prove(late, "#auth-1", fresh.key, *rng));
  expect_unauthorized(fresh.doc, did_prove(fresh.doc, "#auth-1", c.key, *rng));
  EXPECT_EQ(*ledger.resolve("did:hidm:test:a"), c.doc);
  EXPECT_EQ(ledger.chain().size(), 1u);
}

TEST(DidLedger, InterleavedVersionsResolveLatest) {
  auto rng = rng_for("did-interleaved");
  DidLedger ledger;
  std::vector<Controller> cs;
  for (int i = 0; i < 4; ++i) {
    cs.push_back(make_controller("did:hidm:test:" + std::to_string(i), *rng));
    ledger.register_document(cs[i].doc, did_prove(cs[i].doc, "#auth-1", cs[i].key, *rng));
  }
  for (int step = 0; step < 100; ++step) {
    Controller& c = cs[rng->next_u64() % cs.size()];
    c.doc.version += 1;
    c.doc.endpoints = {"https://e.example/" + std::to_string(step)};
    ledger.register_document(c.doc, did_prove(c.doc, "#auth-1", c.key, *rng));
  }
  for (const Controller& c : cs) EXPECT_EQ(*ledger.resolve(c.doc.did), c.doc);
  EXPECT_EQ(ledger.chain().size(), 104u);
  std::size_t before = ledger.chain().size();
  for (int i = 0; i < 50; ++i) ledger.resolve(cs[0].doc.did);
  EXPECT_EQ(ledger.chain().size(), before);
  EXPECT_TRUE(ledger.chain().verify());
}

TEST(DidLedger, RevocationRequiresRoot) {
  auto rng = rng_for("did-revoke");
  DidLedger ledger;
  Controller root = make_controller("did:hidm:root", *rng);
  Controller subject = make_controller("did:hidm:subject", *rng);
  for (Controller* c : {&root, &subject}) ledger.register_document(c->doc, did_prove(c->doc, "#auth-1", c->key, *rng));
  ledger.set_root("did:hidm:root");
  const SchnorrGroup& g = SchnorrGroup::standard();
  Bytes msg = DidLedger::revocation_message("did:hidm:subject");
  EXPECT_THROW(ledger.revoke("did:hidm:subject", DidProof{"#auth-1", schnorr_sign(g, msg, subject.key, *rng)}),
               ProtocolError);
  EXPECT_FALSE(ledger.is_revoked("did:hidm:subject"));
  ledger.revoke("did:hidm:subject", DidProof{"#auth-1", schnorr_sign(g, msg, root.key, *rng)});
  EXPECT_TRUE(ledger.is_revoked("did:hidm:subject"));
  EXPECT_FALSE(ledger.is_revoked("did:hidm:root"));
}

// ---- ATI ledger ------------------------------------------------------------

TEST(AtiLedger, FreshThenReplayed) {
  auto rng = rng_for("ati");
  AtiLedger ledger;
  for (int i = 0; i < 1000; ++i) {
    Id16 ati = rng->uuid_v4();
    ASSERT_FALSE(ledger.contains(ati));
    ASSERT_EQ(ledger.check_and_mark(ati, 100 + i, "did:hidm:ho"), AtiStatus::kFresh);
    ASSERT_EQ(ledger.check_and_mark(ati, 200 + i, "did:hidm:ho"), AtiStatus::kReplayed);
    ASSERT_TRUE(ledger.contains(ati));
  }
  EXPECT_EQ(ledger.chain().size(), 1000u);
  EXPECT_TRUE(ledger.chain().verify());
}

TEST(AtiLedger, ConcurrentRaceHasOneWinner) {
  auto rng = rng_for("ati-race");
  AtiLedger ledger;
  for (int round = 0; round < 20; ++round) {
    Id16 ati = rng->uuid_v4();
    std::atomic<int> fresh{0}, replayed{0};
    std::atomic<bool> go{false};
    std::vector<std::thread> threads;
    for (int t = 0; t < 64; ++t) {
      threads.emplace_back([&] {
        while (!go.load()) std::this_thread::yield();
        (ledger.check_and_mark(ati, 1, "did:hidm:ho") == AtiStatus::kFresh ? fresh : replayed)++;
      });
    }
    go = true;
    for (auto& th : threads) th.join();
    ASSERT_EQ(fresh.load(), 1);
    ASSERT_EQ(replayed.load(), 63);
  }
}

// ---- audit ledger ----------------------------------------------------------

TEST(AuditFilter, ParseAndMatch) {
  AuditRecord r;
  r.event_type = "HealthRecordRead";
  r.origin_module = "HRR";
  r.patient_identifier = "pseudonym:ab";
  r.details = {{"recordId", "7"}};
  EXPECT_TRUE(AuditFilter::parse("").matches(r));
  EXPECT_TRUE(AuditFilter::parse("eventType=HealthRecordRead").matches(r));
  EXPECT_TRUE(AuditFilter::parse("eventType=HealthRecordRead&detail.recordId=7").matches(r));
  EXPECT_FALSE(AuditFilter::parse("eventType=HealthRecordWrite").matches(r));
  EXPECT_FALSE(AuditFilter::parse("detail.recordId=8").matches(r));
  EXPECT_FALSE(AuditFilter::parse("detail.missing=1").matches(r));
  EXPECT_THROW(AuditFilter::parse("eventType"), std::invalid_argument);
  EXPECT_THROW(AuditFilter::parse("color=blue"), std::invalid_argument);
}

TEST(AuditLedger, AppendRequiresRegisteredSignedOrigin) {
  auto rng = rng_for("audit");
  DidLedger dids;
  Controller pa = make_controller("did:hidm:pa", *rng);
  Controller other = make_controller("did:hidm:other", *rng);
  for (Controller* c : {&pa, &other}) dids.register_document(c->doc, did_prove(c->doc, "#auth-1", c->key, *rng));
  std::int64_t clock = 1000;
  AuditLedger ledger("did:hidm:audit", AuditTrustAnchors{&dids, {}, {}, {}}, std::nullopt, [&] { return clock++; });
  ledger.register_origin("PA", "did:hidm:pa");

  AuditWriter writer(ledger, "PA", "#auth-1", pa.key, *rng);
  AuditEvent e{std::string(events::kHealthRecordRead), AccessLevel::kPatientAccessible, "pseudonym:01", "did:hidm:hp",
               {{"recordId", "1"}}};
  EXPECT_EQ(writer.log(e), 0u);
  EXPECT_EQ(writer.log(e), 1u);
  auto records = ledger.records();
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].origin_module, "PA");
  EXPECT_EQ(records[0].timestamp, 1000);
  EXPECT_EQ(records[1].timestamp, 1001);
  EXPECT_EQ(records[0].hp_identifier, "did:hidm:hp");
  EXPECT_EQ(AuditRecord::from_json(records[0].to_json()), records[0]);

  AuditWriter unregistered(ledger, "HRR", "#auth-1", pa.key, *rng);
  AuditWriter impostor(ledger, "PA", "#auth-1", other.key, *rng);
  for (AuditWriter* w : {&unregistered, &impostor}) {
    try {
      w->log(e);
      ADD_FAILURE() << "append accepted";
    } catch (const ProtocolError& err) {
      EXPECT_EQ(err.reason(), Reason::kOriginMismatch);
    }
  }
  EXPECT_EQ(ledger.records().size(), 2u);
  EXPECT_TRUE(ledger.admin_records().empty());
  EXPECT_TRUE(ledger.chain().verify());
}

TEST(AuditLedger, PersistedChainVerifies) {
  auto rng = rng_for("audit-file");
  fs::path dir = scratch_dir("audit");
  DidLedger dids;
  Controller pa = make_controller("did:hidm:pa", *rng);
  dids.register_document(pa.doc, did_prove(pa.doc, "#auth-1", pa.key, *rng));
  {
    AuditLedger ledger("did:hidm:audit", AuditTrustAnchors{&dids, {}, {}, {}}, dir / "audit.jsonl");
    ledger.register_origin("PA", "did:hidm:pa");
    AuditWriter writer(ledger, "PA", "#auth-1", pa.key, *rng);
    for (int i = 0; i < 5; ++i) {
      writer.log(AuditEvent{std::string(events::kHealthRecordWrite), AccessLevel::kAuditorAuthorityAccessible,
                            "pseudonym:" + std::to_string(i), std::nullopt, {}});
    }
  }
  ChainFileReport r = verify_chain_file(dir / "audit.jsonl");
  EXPECT_TRUE(r.ok) << r.error;
  EXPECT_EQ(r.entries, 5u);
}

}  // namespace
}  // namespace hidm
