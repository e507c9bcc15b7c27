#include "cluedesk/common/clock.hpp"
#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/common/text.hpp"

#include <doctest.h>

#include <filesystem>
#include <thread>

using namespace cluedesk;

TEST_CASE("split keeps empty fields") {
    auto parts = text::split("a||b|", '|');
    REQUIRE(parts.size() == 4);
    CHECK(parts[1].empty());
    CHECK(parts[3].empty());
}

TEST_CASE("word tokens keep file names whole") {
    auto t = text::word_tokens("Found fortnite_cheats.exe in Downloads!");
    CHECK(t == std::vector<std::string>{"found", "fortnite_cheats.exe", "in", "downloads"});
}

TEST_CASE("icontains ignores case") {
    CHECK(text::icontains("Just4Visitors network", "just4visitors"));
    CHECK_FALSE(text::icontains("abc", "abcd"));
}

TEST_CASE("sentences split at terminal punctuation") {
    auto s = text::sentences("First one. Second one! Third? Trailing");
    REQUIRE(s.size() == 4);
    CHECK(s[0] == "First one.");
    CHECK(s[3] == "Trailing");
}

TEST_CASE("fnv1a matches the published offset basis and test vector") {
    CHECK(text::fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(text::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("parse_json reports the failing line") {
    try {
        parse_json("{\n\"a\": 1,\n\"b\": ]\n}", "cfg.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.source() == "cfg.json");
    }
}

TEST_CASE("write_text_file replaces content atomically") {
    auto dir = std::filesystem::temp_directory_path() / "cluedesk_common_test";
    std::filesystem::create_directories(dir);
    write_text_file(dir / "x.txt", "one");
    write_text_file(dir / "x.txt", "two");
    CHECK(read_text_file(dir / "x.txt") == "two");
    std::filesystem::remove_all(dir);
}

TEST_CASE("manual clock releases waiters only when advanced") {
    ManualClock clock(1000);
    std::stop_source stop;
    bool done = false;
    std::thread waiter([&] { done = clock.wait_until(1500, stop.get_token()); });
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    CHECK_FALSE(done);
    clock.advance(500);
    waiter.join();
    CHECK(done);
    CHECK(clock.now() == 1500);
}

TEST_CASE("manual clock wait returns false on stop") {
    ManualClock clock(0);
    std::stop_source stop;
    bool result = true;
    std::thread waiter([&] { result = clock.wait_until(10, stop.get_token()); });
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    stop.request_stop();
    waiter.join();
    CHECK_FALSE(result);
}
