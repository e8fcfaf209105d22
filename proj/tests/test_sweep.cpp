#include <doctest.h>

#include "roicomp/sweep.hpp"
#include "roicomp/synthetic.hpp"

using namespace roicomp;

namespace {

std::vector<CorpusItem> small_corpus(int count, int size) {
    std::vector<CorpusItem> corpus;
    for (int i = 0; i < count; ++i) {
        SyntheticSample s = generate_synthetic_angiogram(static_cast<std::uint64_t>(i),
                                                         size, size);
        corpus.push_back({"synth_" + std::to_string(i), std::move(s.image),
                          std::move(s.prob), std::move(s.ground_truth)});
    }
    return corpus;
}

}  // namespace

TEST_CASE("sweep validates its inputs") {
    const auto corpus = small_corpus(2, 128);
    SweepOptions opt;
    opt.gamma0_values = {64};
    CHECK_THROWS_AS(sweep(corpus, opt), std::invalid_argument);  // single point
    opt.gamma0_values = {1, 64};
    CHECK_THROWS_AS(sweep({}, opt), std::invalid_argument);  // empty corpus
}

TEST_CASE("wider budgets never compress better") {
    const auto corpus = small_corpus(3, 128);
    SweepOptions opt;
    opt.gamma0_values = {1, 64};
    const SweepResult r = sweep(corpus, opt);
    REQUIRE(r.variants.size() == 1);
    REQUIRE(r.variants[0].curve.points.size() == 2);
    CHECK(r.variants[0].curve.points[0].cr >= r.variants[0].curve.points[1].cr);
}

TEST_CASE("edge variants appear as separate CSV row groups") {
    const auto corpus = small_corpus(2, 128);
    SweepOptions opt;
    opt.gamma0_values = {8, 16};
    opt.edge_variants = {true, false};
    const SweepResult r = sweep(corpus, opt);
    REQUIRE(r.rows.size() == 2 * 2 * 2);
    const std::string csv = to_csv(r);
    CHECK(csv.find("image_id,gamma0,sigma,edges_enabled,n_o,n_b,cr,mse,psnr,"
                   "cr_norm,psnr_norm,combined\n") == 0);
    int on = 0, off = 0;
    for (const SweepRow& row : r.rows)
        (row.edges_enabled ? on : off) += 1;
    CHECK(on == 4);
    CHECK(off == 4);
}

TEST_CASE("results are byte-identical across worker counts") {
    const auto corpus = small_corpus(3, 128);
    SweepOptions opt;
    opt.gamma0_values = {4, 16, 64};
    opt.workers = 1;
    const std::string csv1 = to_csv(sweep(corpus, opt));
    opt.workers = 8;
    const std::string csv8 = to_csv(sweep(corpus, opt));
    CHECK(csv1 == csv8);
}

TEST_CASE("per-row metrics match a direct pipeline run") {
    const auto corpus = small_corpus(1, 128);
    SweepOptions opt;
    opt.gamma0_values = {8, 32};
    const SweepResult r = sweep(corpus, opt);
    CompressionParams p;
    p.gamma0 = 8;
    const PipelineResult direct = compress(corpus[0].image, corpus[0].prob, p);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].gamma0 == 8);
    CHECK(r.rows[0].n_o == direct.metrics.n_o);
    CHECK(r.rows[0].n_b == direct.metrics.n_b);
    CHECK(r.rows[0].mse ==
          roi_mse(corpus[0].image, direct.processed, corpus[0].gt));
}
