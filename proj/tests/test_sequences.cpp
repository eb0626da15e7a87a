#include <catch2/catch_amalgamated.hpp>

#include "fibrep/fibrep.hpp"

using namespace fibrep;

namespace {

ExactVec e(std::size_t d, std::size_t i) { return basis_vec(d, i - 1); } // 1-based

} // namespace

TEST_CASE("canonical window listings") {
    SECTION("onb") {
        SequenceWindow w = canonical("onb", 4, 4);
        REQUIRE(w.vectors == std::vector<ExactVec>{e(4, 1), e(4, 2), e(4, 3), e(4, 4)});
        REQUIRE(w.tail == TailPolicy::ZeroTail);
    }
    SECTION("ex_e1e1") {
        SequenceWindow w = canonical("ex_e1e1", 5, 4);
        REQUIRE(w.vectors == std::vector<ExactVec>{e(4, 1), e(4, 1), e(4, 2), e(4, 3), e(4, 4)});
    }
    SECTION("ex_e123e1") {
        SequenceWindow w = canonical("ex_e123e1", 6, 5);
        REQUIRE(w.vectors ==
                std::vector<ExactVec>{e(5, 1), e(5, 2), e(5, 3), e(5, 1), e(5, 4), e(5, 5)});
    }
    SECTION("ex_norep") {
        SequenceWindow w = canonical("ex_norep", 5, 4);
        REQUIRE(w.vectors == std::vector<ExactVec>{e(4, 1), e(4, 2), e(4, 1), e(4, 3), e(4, 4)});
    }
    SECTION("ex_e2e2") {
        SequenceWindow w = canonical("ex_e2e2", 8, 6);
        REQUIRE(w.vectors == std::vector<ExactVec>{e(6, 1), e(6, 2), e(6, 3), e(6, 2), e(6, 2),
                                                   e(6, 4), e(6, 5), e(6, 6)});
    }
    SECTION("errors") {
        REQUIRE_THROWS_AS(canonical("nope", 4, 4), UnknownName);
        REQUIRE_THROWS_AS(canonical("onb", 5, 4), DimTooSmall);
        REQUIRE_THROWS_AS(canonical("ex_e2e2", 8, 5), DimTooSmall);
        REQUIRE_THROWS_AS(canonical("onb", 0, 4), OutOfRange);
    }
}

TEST_CASE("derive follows the tail policy") {
    SECTION("zero tail keeps N vectors with f_{N+1} = 0") {
        SequenceWindow w = canonical("onb", 2, 2);
        SequenceWindow m = derive(w, DerivedSpec{Scalar(1), Scalar(1), +1});
        REQUIRE(m.size() == 2);
        REQUIRE(m.vectors[0] == vec_add(e(2, 1), e(2, 2)));
        REQUIRE(m.vectors[1] == e(2, 2));
        REQUIRE(m.tail == TailPolicy::ZeroTail);
    }
    SECTION("minus sign") {
        SequenceWindow w = canonical("onb", 3, 3);
        SequenceWindow n = derive(w, DerivedSpec{Scalar(1), Scalar(1), -1});
        REQUIRE(n.vectors[0] == vec_sub(e(3, 1), e(3, 2)));
        REQUIRE(n.vectors[1] == vec_sub(e(3, 2), e(3, 3)));
        REQUIRE(n.vectors[2] == e(3, 3));
    }
    SECTION("the counterexample window has a repeated pair sum") {
        SequenceWindow w = canonical("ex_norep", 5, 4);
        SequenceWindow m = derive(w, DerivedSpec{Scalar(1), Scalar(1), +1});
        REQUIRE(m.vectors[0] == m.vectors[1]); // e1+e2 twice
        REQUIRE(m.vectors[0] == vec_add(e(4, 1), e(4, 2)));
    }
    SECTION("unknown tail drops the last position") {
        SequenceWindow w = canonical("onb", 4, 4);
        w.tail = TailPolicy::UnknownTail;
        SequenceWindow m = derive(w, DerivedSpec{Scalar(1), Scalar(1), +1});
        REQUIRE(m.size() == 3);
        REQUIRE(m.tail == TailPolicy::UnknownTail);
    }
    SECTION("scaled spec") {
        SequenceWindow w = canonical("onb", 2, 2);
        SequenceWindow m = derive(w, DerivedSpec{Scalar(2), Scalar(1, 3), +1});
        REQUIRE(m.vectors[0] == vec_add(vec_scale(Scalar(2), e(2, 1)), vec_scale(Scalar(1, 3), e(2, 2))));
    }
    SECTION("empty window") {
        SequenceWindow w;
        w.dim = 2;
        REQUIRE_THROWS_AS(derive(w, DerivedSpec{}), EmptyWindow);
    }
}

TEST_CASE("shift") {
    SequenceWindow w = canonical("onb", 4, 4);
    REQUIRE(shift(w, 0).vectors == w.vectors);
    REQUIRE(shift(w, 2).vectors == std::vector<ExactVec>{e(4, 3), e(4, 4)});
    SequenceWindow g = canonical("ex_norep", 5, 4);
    REQUIRE(shift(g, 2).vectors == std::vector<ExactVec>{e(4, 1), e(4, 3), e(4, 4)});
    REQUIRE_THROWS_AS(shift(w, 4), OutOfRange);
}

TEST_CASE("map_window applies the matrix to every vector") {
    SequenceWindow w = canonical("onb", 3, 3);
    ExactMat k = Scalar(2) * ExactMat::identity(3);
    SequenceWindow m = map_window(w, k);
    for (std::size_t i = 0; i < 3; ++i) REQUIRE(m.vectors[i] == vec_scale(Scalar(2), w.vectors[i]));
    ExactMat bad(2, 2);
    REQUIRE_THROWS_AS(map_window(w, bad), DimMismatch);
}

TEST_CASE("random windows are deterministic per seed") {
    SequenceWindow a = random_window(5, 7, 99, WindowKind::Independent);
    SequenceWindow b = random_window(5, 7, 99, WindowKind::Independent);
    REQUIRE(a.vectors == b.vectors);
    REQUIRE(rank(a.synthesis()) == 5);

    SequenceWindow c = random_window(5, 7, 99, WindowKind::Dependent);
    REQUIRE(rank(c.synthesis()) < 5);
    REQUIRE(random_window(5, 7, 99, WindowKind::Dependent).vectors == c.vectors);

    REQUIRE_THROWS_AS(random_window(5, 3, 0, WindowKind::Independent), OutOfRange);
}

TEST_CASE("scalar grammar round trips") {
    for (const char* text : {"0/1", "3/7", "-12/5", "1/2+1/3 i", "0/1-4/1 i", "-1/1-1/1 i"}) {
        Scalar s = parse_scalar(text);
        REQUIRE(format_scalar(s) == text);
        REQUIRE(parse_scalar(format_scalar(s)) == s);
    }
    SECTION("decimal literals convert exactly") {
        REQUIRE(parse_scalar("0.5") == Scalar(1, 2));
        REQUIRE(parse_scalar("-2.25") == Scalar(-9, 4));
        REQUIRE(parse_scalar("3") == Scalar(3));
    }
    SECTION("malformed input") {
        for (const char* text : {"", "x", "1/0", "1/", "1+2", "1+2/3 j", "1 i"})
            REQUIRE_THROWS_AS(parse_scalar(text), ParseError);
    }
}

TEST_CASE("sequence files round trip bit-exactly") {
    SequenceWindow w = random_window(4, 5, 11, WindowKind::Independent);
    w.label = "round trip";
    w.vectors[0][0] = Scalar(Rational(1, 3), Rational(-2, 7));
    Json j = window_to_json(w);
    SequenceWindow back = window_from_json(j);
    REQUIRE(back.dim == w.dim);
    REQUIRE(back.tail == w.tail);
    REQUIRE(back.label == w.label);
    REQUIRE(back.vectors == w.vectors);
    REQUIRE(window_to_json(back).dump() == j.dump());
}

TEST_CASE("sequence file validation") {
    Json good = window_to_json(canonical("onb", 2, 2));
    SECTION("bad tail") {
        Json j = good;
        j["tail"] = "sometimes";
        REQUIRE_THROWS_AS(window_from_json(j), ParseError);
    }
    SECTION("vector length mismatch") {
        Json j = good;
        j["vectors"][0] = Json::array({"1/1"});
        REQUIRE_THROWS_AS(window_from_json(j), ParseError);
    }
    SECTION("missing vectors") {
        Json j = good;
        j["vectors"] = Json::array();
        REQUIRE_THROWS_AS(window_from_json(j), ParseError);
    }
    SECTION("missing dim") {
        Json j = good;
        j.erase("dim");
        REQUIRE_THROWS_AS(window_from_json(j), ParseError);
    }
    SECTION("unreadable path") {
        REQUIRE_THROWS_AS(read_window("/nonexistent/path/w.json"), IoError);
    }
}
