#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include <qgc/transform.hpp>

#include "support.hpp"

using namespace qgc;
using testsupport::flat_pe_reference;
using testsupport::reference_table;

namespace {

SymbolString str4(std::vector<std::uint32_t> external) {
    return SymbolString::from_external(4, external);
}

SymbolString random_string(std::uint32_t order, std::size_t length, std::mt19937_64& rng) {
    std::vector<Symbol> symbols(length);
    for (Symbol& s : symbols) s = static_cast<Symbol>(rng() % order);
    return SymbolString::unchecked(Alphabet(order), std::move(symbols));
}

}  // namespace

TEST_CASE("symbol strings validate their range") {
    CHECK_THROWS_AS(SymbolString(Alphabet(4), {0, 4}), std::invalid_argument);
    CHECK_THROWS_WITH(SymbolString::from_external(4, {{1u, 5u}}),
                      doctest::Contains("out of range"));
    CHECK(str4({1, 2, 3, 1, 2}).to_external() == std::vector<std::uint32_t>{1, 2, 3, 1, 2});
    CHECK(SymbolString(Alphabet(4), {}).empty());
}

TEST_CASE("e_transform matches the worked example") {
    const OperationTable op = reference_table();
    // l=4: 4*1=2, 2*2=4, 4*3=3.
    CHECK(e_transform(op, 3, str4({1, 2, 3})) == str4({2, 4, 3}));
    CHECK(e_transform(op, 0, str4({})).empty());
    for (Symbol l = 0; l < 4; ++l) {
        for (Symbol x = 0; x < 4; ++x) {
            const SymbolString out =
                e_transform(op, l, SymbolString(Alphabet(4), {x}));
            CHECK(out.symbols()[0] == op.apply(l, x));
        }
    }
    CHECK_THROWS_AS(e_transform(op, 4, str4({1})), std::invalid_argument);
}

TEST_CASE("e_inverse undoes e_transform") {
    const OperationTable op = reference_table();
    CHECK(e_inverse(op, 3, str4({2, 4, 3})) == str4({1, 2, 3}));
    CHECK(e_inverse(op, 1, str4({})).empty());

    std::mt19937_64 rng(11);
    for (std::uint32_t order : {4u, 16u}) {
        const OperationTable t = random_quasigroup(order, 5);
        for (Symbol l = 0; l < order; l += (order == 16 ? 5 : 1)) {
            const SymbolString msg = random_string(order, 1000, rng);
            CHECK(e_inverse(t, l, e_transform(t, l, msg)) == msg);
        }
    }
}

TEST_CASE("e_chain composes transformations in order") {
    const OperationTable op = reference_table();
    const std::vector<EStep> steps = {{op, 3}, {op, 0}};
    // Round 1 gives [2,4,3]; round 2 with l=1: 1*2=2, 2*4=1, 1*3=4.
    CHECK(e_chain(steps, str4({1, 2, 3})) == str4({2, 1, 4}));

    const std::vector<EStep> single = {{op, 2}};
    const SymbolString msg = str4({1, 2, 3, 1, 2});
    CHECK(e_chain(single, msg) == e_transform(op, 2, msg));

    SUBCASE("chain followed by the reversed inverse chain is the identity") {
        std::mt19937_64 rng(3);
        const SymbolString input = random_string(4, 200, rng);
        SymbolString encrypted = e_chain(steps, input);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            encrypted = e_inverse(it->op, it->leader, encrypted);
        }
        CHECK(encrypted == input);
    }
    SUBCASE("empty chains and mismatched alphabets are rejected") {
        CHECK_THROWS_AS(e_chain({}, msg), std::invalid_argument);
        const std::vector<EStep> wrong = {{random_quasigroup(2, 0), 0}};
        CHECK_THROWS_AS(e_chain(wrong, msg), std::invalid_argument);
    }
}

TEST_CASE("pe_round_encrypt reproduces the worked example") {
    const ParastropheSet q{reference_table()};
    const RoundParams params{3, 3};  // leader 4, d1 = 3
    const auto [cipher, schedule] = pe_round_encrypt(q, params, str4({1, 2, 3, 1, 2}));

    CHECK(cipher == str4({3, 2, 3, 4, 2}));
    REQUIRE(schedule.size() == 2);
    CHECK(schedule[0].start == 1);
    CHECK(schedule[0].planned_length == 3);
    CHECK(schedule[0].actual_length == 3);
    CHECK(schedule[0].parastrophe == 4);
    CHECK(schedule[0].leader == 3);
    CHECK(schedule[1].start == 4);
    CHECK(schedule[1].planned_length == 11);
    CHECK(schedule[1].actual_length == 2);
    CHECK(schedule[1].parastrophe == 6);
    CHECK(schedule[1].leader == 2);
}

TEST_CASE("pe_round handles degenerate blocks") {
    const ParastropheSet q{reference_table()};
    SUBCASE("length-1 message is a single clamped block") {
        for (Symbol l = 0; l < 4; ++l) {
            for (Symbol x = 0; x < 4; ++x) {
                const RoundParams params{l, 5};
                const auto [cipher, schedule] =
                    pe_round_encrypt(q, params, SymbolString(Alphabet(4), {x}));
                REQUIRE(schedule.size() == 1);
                CHECK(schedule[0].actual_length == 1);
                // s1 = (5 mod 6) + 1 = 6.
                CHECK(cipher.symbols()[0] ==
                      q.table(ParastropheIndex(6)).apply(l, x));
            }
        }
    }
    SUBCASE("message shorter than d1 is a single block") {
        const auto schedule =
            pe_trace_schedule(q, {3, 100}, str4({1, 2, 3, 1, 2}), false);
        REQUIRE(schedule.size() == 1);
        CHECK(schedule[0].planned_length == 100);
        CHECK(schedule[0].actual_length == 5);
    }
    SUBCASE("empty messages and bad parameters are rejected") {
        CHECK_THROWS_AS(pe_round_encrypt(q, {3, 3}, str4({})), std::invalid_argument);
        CHECK_THROWS_AS(pe_round_encrypt(q, {3, 1}, str4({1})), std::invalid_argument);
        CHECK_THROWS_AS(pe_round_encrypt(q, {4, 3}, str4({1})), std::invalid_argument);
    }
}

TEST_CASE("pe_round_decrypt inverts pe_round_encrypt") {
    const ParastropheSet q{reference_table()};
    CHECK(pe_round_decrypt(q, {3, 3}, str4({3, 2, 3, 4, 2})) == str4({1, 2, 3, 1, 2}));

    std::mt19937_64 rng(99);
    for (std::uint32_t order : {2u, 4u, 16u}) {
        const ParastropheSet qq{random_quasigroup(order, order)};
        for (int i = 0; i < 100; ++i) {
            const std::size_t k = 1 + rng() % 300;
            const SymbolString msg = random_string(order, k, rng);
            const RoundParams params{static_cast<Symbol>(rng() % order),
                                     2 + rng() % (order * order)};
            const auto [cipher, schedule] = pe_round_encrypt(qq, params, msg);
            REQUIRE(cipher.size() == msg.size());
            CHECK(pe_round_decrypt(qq, params, cipher) == msg);
        }
    }
}

TEST_CASE("pe round-trip is exhaustive for order 4 up to length 8") {
    const ParastropheSet q{reference_table()};
    const RoundParams params{3, 3};
    for (std::size_t k = 1; k <= 8; ++k) {
        std::vector<Symbol> msg(k, 0);
        bool done = false;
        while (!done) {
            const SymbolString m = SymbolString::unchecked(Alphabet(4), msg);
            const SymbolString c = pe_round_encrypt(q, params, m).output;
            REQUIRE(pe_round_decrypt(q, params, c) == m);
            done = true;
            for (std::size_t i = 0; i < k; ++i) {
                if (++msg[i] < 4) {
                    done = false;
                    break;
                }
                msg[i] = 0;
            }
        }
    }
}

TEST_CASE("pe_round output matches the flat-recurrence reference") {
    std::mt19937_64 rng(2024);
    for (std::uint32_t order : {2u, 4u, 16u}) {
        const OperationTable base = random_quasigroup(order, 17 + order);
        const ParastropheSet q{base};
        for (int i = 0; i < 30; ++i) {
            const std::size_t k = 1 + rng() % 400;
            const SymbolString msg = random_string(order, k, rng);
            const RoundParams params{static_cast<Symbol>(rng() % order),
                                     2 + rng() % 40};
            const auto [cipher, schedule] = pe_round_encrypt(q, params, msg);
            const auto ref =
                flat_pe_reference(base, params.leader, params.first_block_length,
                                  msg.symbols());

            REQUIRE(std::equal(cipher.symbols().begin(), cipher.symbols().end(),
                               ref.output.begin(), ref.output.end()));
            REQUIRE(schedule.size() == ref.blocks.size());
            for (std::size_t b = 0; b < schedule.size(); ++b) {
                CHECK(schedule[b].start == ref.blocks[b].start);
                CHECK(schedule[b].planned_length == ref.blocks[b].length);
                CHECK(schedule[b].parastrophe == ref.blocks[b].selector);
                CHECK(schedule[b].leader == ref.blocks[b].leader);
            }
        }
    }
}

TEST_CASE("block schedules obey the chained-length arithmetic") {
    std::mt19937_64 rng(55);
    for (std::uint32_t order : {2u, 4u, 16u}) {
        const ParastropheSet q{random_quasigroup(order, 1)};
        for (int i = 0; i < 40; ++i) {
            const std::size_t k = 2 + rng() % 500;
            const SymbolString msg = random_string(order, k, rng);
            const RoundParams params{static_cast<Symbol>(rng() % order),
                                     2 + rng() % 30};
            const auto [cipher, schedule] = pe_round_encrypt(q, params, msg);
            const auto c = cipher.symbols();

            std::uint64_t covered = 0;
            for (std::size_t b = 0; b < schedule.size(); ++b) {
                const BlockRecord& rec = schedule[b];
                CHECK(rec.start == covered + 1);
                CHECK(rec.actual_length >= 1);
                CHECK(rec.actual_length ==
                      std::min<std::uint64_t>(rec.planned_length, k - covered));
                CHECK(rec.parastrophe ==
                      static_cast<int>(rec.planned_length % 6) + 1);
                if (b >= 1) {
                    CHECK(rec.planned_length >= order + 1);
                    CHECK(rec.planned_length <=
                          std::uint64_t{order} * order + order);
                    const Symbol u = c[rec.start - 3];
                    const Symbol v = c[rec.start - 2];
                    CHECK(rec.planned_length ==
                          std::uint64_t{order} * (u + 1) + (v + 1));
                    CHECK(rec.leader == v);
                }
                covered += rec.actual_length;
            }
            CHECK(covered == k);
        }
    }
}

TEST_CASE("pe ciphertext prefixes depend only on message prefixes") {
    const ParastropheSet q{reference_table()};
    std::mt19937_64 rng(4);
    const SymbolString msg = random_string(4, 300, rng);
    const RoundParams params{2, 4};
    const auto [cipher, schedule] = pe_round_encrypt(q, params, msg);

    std::uint64_t boundary = 0;
    for (const BlockRecord& rec : schedule) {
        boundary += rec.actual_length;
        const std::vector<Symbol> prefix(msg.symbols().begin(),
                                         msg.symbols().begin() + boundary);
        const auto truncated =
            pe_round_encrypt(q, params, SymbolString::unchecked(Alphabet(4), prefix));
        CHECK(std::equal(truncated.output.symbols().begin(),
                         truncated.output.symbols().end(),
                         cipher.symbols().begin(),
                         cipher.symbols().begin() + boundary));
    }
}

TEST_CASE("pe_trace_schedule reads the same schedule from either side") {
    const ParastropheSet q{reference_table()};
    const RoundParams params{3, 3};
    const SymbolString msg = str4({1, 2, 3, 1, 2});

    const auto from_message = pe_trace_schedule(q, params, msg, false);
    REQUIRE(from_message.size() == 2);
    CHECK(from_message[0].planned_length == 3);
    CHECK(from_message[0].parastrophe == 4);
    CHECK(from_message[1].planned_length == 11);
    CHECK(from_message[1].parastrophe == 6);

    const SymbolString cipher = pe_round_encrypt(q, params, msg).output;
    const auto from_cipher = pe_trace_schedule(q, params, cipher, true);
    REQUIRE(from_cipher.size() == from_message.size());
    for (std::size_t b = 0; b < from_cipher.size(); ++b) {
        CHECK(from_cipher[b].start == from_message[b].start);
        CHECK(from_cipher[b].planned_length == from_message[b].planned_length);
        CHECK(from_cipher[b].actual_length == from_message[b].actual_length);
        CHECK(from_cipher[b].parastrophe == from_message[b].parastrophe);
        CHECK(from_cipher[b].leader == from_message[b].leader);
    }
}

TEST_CASE("pe_encrypt applies rounds in order and pe_decrypt undoes them") {
    const OperationTable base = reference_table();
    SUBCASE("a single-round key behaves like pe_round_encrypt") {
        const PEKey key(base, {{3, 3}});
        const SymbolString msg = str4({1, 2, 3, 1, 2});
        CHECK(pe_encrypt(key, msg) ==
              pe_round_encrypt(key.parastrophes(), {3, 3}, msg).output);
        CHECK(pe_decrypt(key, pe_encrypt(key, msg)) == msg);
    }
    SUBCASE("the three-round reference configuration round-trips") {
        const PEKey key(base, {{3, 3}, {3, 3}, {3, 3}});
        std::mt19937_64 rng(8);
        const SymbolString msg = random_string(4, 5000, rng);
        const SymbolString cipher = pe_encrypt(key, msg);
        CHECK(cipher.size() == msg.size());
        CHECK_FALSE(cipher == msg);
        CHECK(pe_decrypt(key, cipher) == msg);
    }
    SUBCASE("random keys round-trip across orders and round counts") {
        std::mt19937_64 rng(123);
        for (std::uint32_t order : {2u, 4u, 16u, 256u}) {
            for (int i = 0; i < 20; ++i) {
                std::vector<RoundParams> rounds(1 + rng() % 5);
                for (RoundParams& r : rounds) {
                    r.leader = static_cast<Symbol>(rng() % order);
                    r.first_block_length = 2 + rng() % (order * order + order - 1);
                }
                const PEKey key(random_quasigroup(order, rng()), rounds);
                const SymbolString msg = random_string(order, 1 + rng() % 2000, rng);
                CHECK(pe_decrypt(key, pe_encrypt(key, msg)) == msg);
            }
        }
    }
    SUBCASE("key validation") {
        CHECK_THROWS_AS(PEKey(base, {}), std::invalid_argument);
        CHECK_THROWS_AS(PEKey(base, {{4, 3}}), std::invalid_argument);
        CHECK_THROWS_AS(PEKey(base, {{0, 1}}), std::invalid_argument);
        const PEKey key(base, {{0, 2}});
        CHECK_THROWS_AS(pe_encrypt(key, str4({})), std::invalid_argument);
    }
}
