#include <doctest.h>

#include <random>

#include "eonbam/bam.hpp"
#include "eonbam/error.hpp"
#include "oracles.hpp"

using namespace eonbam;

namespace {

const std::vector<int> kPools{80, 120, 200};

BamConfig paper_config() { return BamConfig(kPools, 400); }

BamState with_usage(std::vector<int> used) {
  BamState s(static_cast<int>(used.size()));
  s.used = std::move(used);
  return s;
}

}  // namespace

TEST_CASE("pools derive the nested RDM constraints") {
  const BamConfig cfg = paper_config();
  CHECK(cfg.rdm_rc() == std::vector<int>{400, 320, 200});
  const std::vector<double> shares{20, 30, 50};
  CHECK(BamConfig::from_shares(shares, 400).pools() == kPools);
  const std::vector<double> short_shares{20, 30, 40};
  CHECK_THROWS_AS(BamConfig::from_shares(short_shares, 400), ValidationError);
  CHECK_THROWS_AS(BamConfig({0, 400}, 400), ValidationError);
}

TEST_CASE("admit examples") {
  const BamConfig cfg = paper_config();
  CHECK_FALSE(admit(BamKind::MAM, cfg, with_usage({80, 0, 0}), 0, 1));
  CHECK_FALSE(admit(BamKind::RDM, cfg, with_usage({0, 130, 190}), 1, 2));
  CHECK(admit(BamKind::RDM, cfg, with_usage({200, 0, 0}), 2, 5));

  const BamState nearly_full = with_usage({80, 120, 195});
  CHECK(admit(BamKind::ATCS, cfg, nearly_full, 2, 5));
  CHECK(admit(BamKind::MAM, cfg, nearly_full, 2, 5));
  CHECK(admit(BamKind::RDM, cfg, nearly_full, 2, 5));
  for (BamKind k : kAllBamKinds) {
    CHECK_FALSE(admit(k, cfg, with_usage({80, 120, 200}), 2, 5));
    CHECK(admit(k, cfg, BamState(3), 2, 5));
  }
}

TEST_CASE("admit rejects unknown classes and empty demands") {
  const BamConfig cfg = paper_config();
  CHECK_THROWS_AS(admit(BamKind::MAM, cfg, BamState(3), 3, 1), UnknownClass);
  CHECK_THROWS_AS(admit(BamKind::RDM, cfg, BamState(3), -1, 1), UnknownClass);
  CHECK_THROWS_AS(admit(BamKind::ATCS, cfg, BamState(3), 0, 0), std::invalid_argument);
}

TEST_CASE("admit matches the rule oracle on arbitrary usage; RDM => ATCS everywhere") {
  const BamConfig cfg = paper_config();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<int> used(3);
    int room = 400;
    for (int c : {2, 1, 0}) {
      used[c] = std::uniform_int_distribution<int>(0, room)(rng);
      room -= used[c];
    }
    const int c = std::uniform_int_distribution<int>(0, 2)(rng);
    const int b = std::uniform_int_distribution<int>(1, 10)(rng);
    const BamState s = with_usage(used);
    const bool rdm = admit(BamKind::RDM, cfg, s, c, b);
    const bool atcs = admit(BamKind::ATCS, cfg, s, c, b);
    CHECK(admit(BamKind::MAM, cfg, s, c, b) == oracle::admit_mam(kPools, used, c, b));
    CHECK(rdm == oracle::admit_rdm(kPools, used, c, b));
    CHECK(atcs == oracle::admit_atcs(kPools, used, c, b));
    if (rdm) CHECK(atcs);
  }
}

TEST_CASE("MAM => RDM => ATCS on usage inside the MAM pools") {
  // Outside the pools MAM's rule says nothing about the others: with Gold at
  // 350, Silver passes MAM but breaks RC1.
  const BamConfig cfg = paper_config();
  CHECK(admit(BamKind::MAM, cfg, with_usage({0, 0, 350}), 1, 1));
  CHECK_FALSE(admit(BamKind::RDM, cfg, with_usage({0, 0, 350}), 1, 1));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<int> used(3);
    for (int c = 0; c < 3; ++c) used[c] = std::uniform_int_distribution<int>(0, kPools[c])(rng);
    const int c = std::uniform_int_distribution<int>(0, 2)(rng);
    const int b = std::uniform_int_distribution<int>(1, 10)(rng);
    const BamState s = with_usage(used);
    const bool mam = admit(BamKind::MAM, cfg, s, c, b);
    const bool rdm = admit(BamKind::RDM, cfg, s, c, b);
    const bool atcs = admit(BamKind::ATCS, cfg, s, c, b);
    CHECK(mam == oracle::admit_mam(kPools, used, c, b));
    CHECK(rdm == oracle::admit_rdm(kPools, used, c, b));
    CHECK(atcs == oracle::admit_atcs(kPools, used, c, b));
    if (mam) CHECK(rdm);
    if (rdm) CHECK(atcs);
  }
}

TEST_CASE("commit examples") {
  const BamConfig cfg = paper_config();

  SUBCASE("ATCS draws from the own pool first") {
    BamState s(3);
    const Attribution a = commit(BamKind::ATCS, cfg, s, 2, 5);
    CHECK(a.from_pool == std::vector<int>{0, 0, 5});
    CHECK(s.own_used == std::vector<int>{0, 0, 5});
    CHECK(s.borrowed[2] == std::vector<int>{0, 0, 0});
  }
  SUBCASE("ATCS borrows from the lowest-priority donor") {
    BamState s(3);
    s.used = {0, 0, 200};
    s.own_used = {0, 0, 200};
    const Attribution a = commit(BamKind::ATCS, cfg, s, 2, 5);
    CHECK(a.from_pool == std::vector<int>{5, 0, 0});
    CHECK(s.borrowed[2][0] == 5);
    CHECK(s.used[2] == 205);
  }
  SUBCASE("ATCS splits a demand across own pool and donors") {
    BamState s(3);
    s.used = {78, 0, 198};
    s.own_used = {78, 0, 198};
    const Attribution a = commit(BamKind::ATCS, cfg, s, 2, 5);
    CHECK(a.from_pool == std::vector<int>{2, 1, 2});
    CHECK_FALSE(check_invariants(BamKind::ATCS, cfg, s).has_value());
  }
  SUBCASE("ATCS own draw respects slots lent out of that pool") {
    // Bronze lent 80 slots of Gold's pool; Gold's own draw must stop at 120.
    BamState s(3);
    s.used = {160, 0, 120};
    s.own_used = {80, 0, 120};
    s.borrowed[0][2] = 80;
    const Attribution a = commit(BamKind::ATCS, cfg, s, 2, 5);
    CHECK(a.from_pool == std::vector<int>{0, 5, 0});
    CHECK_FALSE(check_invariants(BamKind::ATCS, cfg, s).has_value());
  }
  SUBCASE("RDM charges the class's own counter") {
    BamState s(3);
    const Attribution a = commit(BamKind::RDM, cfg, s, 0, 1);
    CHECK(s.used == std::vector<int>{1, 0, 0});
    CHECK(a.from_pool == std::vector<int>{1, 0, 0});
  }
  SUBCASE("commit without admission") {
    BamState s = with_usage({80, 0, 0});
    CHECK_THROWS_AS(commit(BamKind::MAM, cfg, s, 0, 1), PreconditionViolated);
  }
}

TEST_CASE("release_volumetric") {
  const BamConfig cfg = paper_config();

  SUBCASE("commit then release is the identity") {
    for (BamKind k : kAllBamKinds) {
      BamState s(3);
      commit(k, cfg, s, 1, 2);
      const BamState before = s;
      const Attribution a = commit(k, cfg, s, 2, 5);
      release_volumetric(k, cfg, s, 2, a);
      CHECK(s == before);
    }
  }
  SUBCASE("double release underflows") {
    BamState s(3);
    const Attribution a = commit(BamKind::ATCS, cfg, s, 2, 5);
    release_volumetric(BamKind::ATCS, cfg, s, 2, a);
    CHECK_THROWS_AS(release_volumetric(BamKind::ATCS, cfg, s, 2, a), LedgerUnderflow);
  }
  SUBCASE("release of a loan repays exactly that donor") {
    BamState s(3);
    s.used = {0, 0, 205};
    s.own_used = {0, 0, 200};
    s.borrowed[2][0] = 5;
    release_volumetric(BamKind::ATCS, cfg, s, 2, Attribution{{5, 0, 0}});
    CHECK(s.borrowed[2][0] == 0);
    CHECK(s.used[2] == 200);
    CHECK(s.own_used[2] == 200);
  }
  SUBCASE("release naming an unused loan underflows and leaves state alone") {
    BamState s(3);
    commit(BamKind::ATCS, cfg, s, 2, 5);
    const BamState before = s;
    CHECK_THROWS_AS(release_volumetric(BamKind::ATCS, cfg, s, 2, Attribution{{5, 0, 0}}),
                    LedgerUnderflow);
    CHECK(s == before);
  }
}

TEST_CASE("random commit/release sequences keep every model invariant") {
  const BamConfig cfg = paper_config();
  const int demand[] = {1, 2, 5};
  for (BamKind kind : kAllBamKinds) {
    std::mt19937_64 rng(static_cast<unsigned>(kind) + 3);
    BamState s(3);
    std::vector<std::pair<int, Attribution>> live;
    for (int step = 0; step < 20000; ++step) {
      const bool arrive = live.empty() || std::bernoulli_distribution(0.6)(rng);
      if (arrive) {
        const int c = std::uniform_int_distribution<int>(0, 2)(rng);
        if (admit(kind, cfg, s, c, demand[c])) {
          live.emplace_back(c, commit(kind, cfg, s, c, demand[c]));
        }
      } else {
        const auto i = std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng);
        release_volumetric(kind, cfg, s, live[i].first, live[i].second);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
      }
      const auto violation = check_invariants(kind, cfg, s);
      REQUIRE_MESSAGE(!violation, *violation);
    }
    for (auto& [c, a] : live) release_volumetric(kind, cfg, s, c, a);
    CHECK(s == BamState(3));
  }
}

TEST_CASE("ATCS admission ignores how the ledger is distributed") {
  const BamConfig cfg = paper_config();
  // Same usage (100, 0, 250) reached through different orders.
  BamState gold_first(3), bronze_first(3);
  for (int i = 0; i < 50; ++i) commit(BamKind::ATCS, cfg, gold_first, 2, 5);
  for (int i = 0; i < 100; ++i) commit(BamKind::ATCS, cfg, gold_first, 0, 1);
  for (int i = 0; i < 100; ++i) commit(BamKind::ATCS, cfg, bronze_first, 0, 1);
  for (int i = 0; i < 50; ++i) commit(BamKind::ATCS, cfg, bronze_first, 2, 5);
  REQUIRE(gold_first.used == bronze_first.used);
  REQUIRE_FALSE(gold_first.borrowed == bronze_first.borrowed);
  for (int c = 0; c < 3; ++c) {
    for (int b = 1; b <= 60; ++b) {
      CHECK(admit(BamKind::ATCS, cfg, gold_first, c, b) ==
            admit(BamKind::ATCS, cfg, bronze_first, c, b));
    }
  }
}

TEST_CASE("sharing directions: HTL for RDM and ATCS, LTH only for ATCS") {
  const BamConfig cfg = paper_config();
  auto fill = [&](BamKind kind, int c, int b) {
    BamState s(3);
    while (admit(kind, cfg, s, c, b)) commit(kind, cfg, s, c, b);
    return s.used[c];
  };
  CHECK(fill(BamKind::MAM, 0, 1) == 80);
  CHECK(fill(BamKind::RDM, 0, 1) == 400);
  CHECK(fill(BamKind::ATCS, 0, 1) == 400);
  CHECK(fill(BamKind::MAM, 2, 5) == 200);
  CHECK(fill(BamKind::RDM, 2, 5) == 200);
  CHECK(fill(BamKind::ATCS, 2, 5) == 400);
}

TEST_CASE("bam kind names") {
  CHECK(parse_bam_kind("Atcs") == BamKind::ATCS);
  CHECK(parse_bam_kind("rdm") == BamKind::RDM);
  CHECK_FALSE(parse_bam_kind("grdm").has_value());
  CHECK(to_string(BamKind::MAM) == "MAM");
}
