#include <doctest.h>

#include "agc/contraction.hpp"
#include "agc/graph.hpp"

using namespace agc;

TEST_CASE("identity contraction validates") {
    Contraction id = identity_contraction(tau_r_e(0, 2));
    CHECK(check_contraction(id));
    CHECK(is_nice(id));
}

TEST_CASE("sigma_2 onto tau_0(2)") {
    Contraction c = validate_contraction({path_sigma(2), tau_r_e(0, 2), {0, 0}});
    CHECK(is_nice(c));
    // same map onto tau_0(3) breaks beta additivity
    std::string code;
    Contraction bad{path_sigma(2), tau_r_e(0, 3), {0, 0}};
    CHECK_FALSE(check_contraction(bad, &code));
    CHECK(code == "BetaMismatch");
    CHECK_THROWS_AS(validate_contraction(bad), Error);
}

TEST_CASE("edge and fiber violations carry their codes") {
    // sigma_3 -> sigma_2 collapsing the two END vertices leaves a torn fiber
    std::string code;
    Contraction torn{path_sigma(3), path_sigma(2), {0, 1, 0}};
    CHECK_FALSE(check_contraction(torn, &code));
    CHECK(code == "FiberDisconnected");

    // permuting the middle of a path maps an edge across non-adjacent vertices
    Contraction crossed{path_sigma(3), path_sigma(3), {0, 2, 1}};
    CHECK_FALSE(check_contraction(crossed, &code));
    CHECK(code == "EdgeMismatch");

    Contraction wrong{path_sigma(3), tau_rr_ee(0, 0, 1, 2), {0, 0, 1}};
    CHECK_FALSE(check_contraction(wrong, &code));
    CHECK(code == "BetaMismatch");

    // tails must land on the image vertex
    Contraction tails{tau_rr_ee(1, 1, 1, 1), tau_rr_ee(2, 0, 1, 1), {0, 1}};
    CHECK_FALSE(check_contraction(tails, &code));
    CHECK(code == "TailMismatch");
}

TEST_CASE("niceness distinguishes degree-zero collapses") {
    // star with center 0 and three leaves of degree 1, onto tau_0(3)
    RawGraph raw;
    raw.beta = {0, 1, 1, 1};
    for (int leaf = 1; leaf <= 3; ++leaf) {
        int f = static_cast<int>(raw.involution.size());
        raw.involution.push_back(f + 1);
        raw.involution.push_back(f);
        raw.boundary.push_back(0);
        raw.boundary.push_back(leaf);
        raw.tail_label.push_back(0);
        raw.tail_label.push_back(0);
    }
    AGraph star = AGraph::validate(raw);
    Contraction c = validate_contraction({star, tau_r_e(0, 3), {0, 0, 0, 0}});
    CHECK_FALSE(is_nice(c));  // the degree-0 center is swallowed by a positive fiber
}

TEST_CASE("compose") {
    AGraph s3 = path_sigma(3);
    AGraph mid = tau_rr_ee(0, 0, 2, 1);
    Contraction first = validate_contraction({s3, mid, {0, 0, 1}});
    Contraction second = validate_contraction({mid, tau_r_e(0, 3), {0, 0}});
    Contraction whole = compose(first, second);
    CHECK(whole.source == s3);
    CHECK(whole.target == tau_r_e(0, 3));
    CHECK(whole.vertex_map == std::vector<int>{0, 0, 0});

    Contraction id = identity_contraction(s3);
    CHECK(compose(id, first) == first);

    CHECK_THROWS_WITH_AS(compose(second, first), doctest::Contains("NotComposable"), Error);
}

TEST_CASE("canonical contraction") {
    Contraction c = canonical_contraction(path_sigma(2));
    CHECK(c.target == tau_r_e(0, 2));
    CHECK(c.vertex_map == std::vector<int>{0, 0});

    Contraction id_like = canonical_contraction(tau_r_e(1, 1));
    CHECK(id_like.source == id_like.target);
    CHECK(id_like.vertex_map == std::vector<int>{0});

    // tails ride along, and without degree-0 vertices niceness is vacuous
    Contraction t = canonical_contraction(tau_rr_ee(2, 1, 1, 1));
    CHECK(t.target == tau_r_e(3, 2));
    CHECK(is_nice(t));
}

TEST_CASE("contraction keys separate maps over the same target") {
    // two maps sigma_3 -> tau_{0,0}(2,1): collapse the first edge or the last
    AGraph s3 = path_sigma(3);
    AGraph t = tau_rr_ee(0, 0, 2, 1);
    Contraction a = validate_contraction({s3, t, {0, 0, 1}});
    Contraction b = validate_contraction({s3, t, {1, 0, 0}});
    CHECK(contraction_key(a) == contraction_key(b));  // the path flips end to end
    AGraph t2 = tau_rr_ee(0, 0, 1, 2);
    Contraction c = validate_contraction({s3, t2, {0, 1, 1}});
    CHECK(contraction_key(a) != contraction_key(c));  // different fixed target
}
