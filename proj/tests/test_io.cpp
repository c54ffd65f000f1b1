#include <gtest/gtest.h>

#include "goppafold/harness.hpp"
#include "goppafold/io.hpp"

using namespace goppafold;

namespace {

Instance sample_qc(uint64_t seed) {
    const FieldCtx& f16 = FieldCtx::get(2, 4);
    Fe g = fe(f16, f16.generator());
    AffineMap phi(g.pow(3), fe(f16, 7));
    return build_qc_instance(prime_view(f16), phi, 3, 4, 2, seed);
}

Instance sample_qd(uint64_t seed) {
    const FieldCtx& f64 = FieldCtx::get(2, 6);
    return build_qm_goppa(prime_view(f64), {fe(f64, 1), fe(f64, 2)}, 4, Poly(f64, {3, 1}), seed);
}

Instance sample_qm(uint64_t seed) {
    const FieldCtx& f27 = FieldCtx::get(3, 3);
    return build_qm_alternant(prime_view(f27), {fe(f27, 1), fe(f27, 3)}, 2, 3, seed);
}

}  // namespace

TEST(InstanceFile, RoundTripAcrossFamilies) {
    for (const Instance& inst : {sample_qc(5), sample_qd(6), sample_qm(7)}) {
        std::string text = serialize_instance(inst);
        Instance back = parse_instance(text);
        EXPECT_EQ(serialize_instance(back), text);
        EXPECT_EQ(back.code.kind, inst.code.kind);
        EXPECT_EQ(back.code.degree, inst.code.degree);
        EXPECT_EQ(back.code.x.size(), inst.code.x.size());
        EXPECT_EQ(back.seed, inst.seed);
        EXPECT_EQ(back.qc_d, inst.qc_d);
        // and the parsed instance verifies just like the original
        EXPECT_EQ(verify_instance(back).verdict, verify_instance(inst).verdict);
    }
}

TEST(InstanceFile, FamilyTags) {
    EXPECT_NE(serialize_instance(sample_qc(5)).find("kind qc alternant"), std::string::npos);
    EXPECT_NE(serialize_instance(sample_qd(6)).find("kind qd goppa"), std::string::npos);
    EXPECT_NE(serialize_instance(sample_qm(7)).find("kind qm alternant"), std::string::npos);
}

TEST(InstanceFile, ParseErrors) {
    EXPECT_THROW(parse_instance("nonsense\n"), std::invalid_argument);
    EXPECT_THROW(parse_instance("goppafold instance v1\nfield 2 4 1 1 0 0 1\n"), std::invalid_argument);
    Instance inst = sample_qc(8);
    std::string text = serialize_instance(inst);
    // drop the group line
    std::string broken = text;
    size_t pos = broken.find("group ");
    broken.erase(pos, broken.find('\n', pos) - pos + 1);
    EXPECT_THROW(parse_instance(broken), std::invalid_argument);
    // folded descriptions ("plain") cannot be folded again
    CodeSpec spec = inst.code;
    EXPECT_THROW(parse_instance(serialize_folded_spec(spec, 1)), std::invalid_argument);
}

TEST(InstanceFile, DigestSeparatesInstances) {
    Instance a = sample_qc(5);
    Instance b = sample_qc(5);
    EXPECT_EQ(instance_digest(a), instance_digest(b));
    Instance c = sample_qc(6);
    EXPECT_NE(instance_digest(a), instance_digest(c));
    Instance d = a;
    d.code.degree += 1;
    EXPECT_NE(instance_digest(a), instance_digest(d));
}

TEST(Builders, DeterministicGivenSeed) {
    EXPECT_EQ(serialize_instance(sample_qc(33)), serialize_instance(sample_qc(33)));
    EXPECT_EQ(serialize_instance(sample_qd(33)), serialize_instance(sample_qd(33)));
    EXPECT_EQ(serialize_instance(sample_qm(33)), serialize_instance(sample_qm(33)));
    EXPECT_NE(serialize_instance(sample_qc(33)), serialize_instance(sample_qc(34)));
}

TEST(Reports, SingleInstanceFormat) {
    Instance inst = sample_qc(9);
    FoldReport rep = verify_instance(inst);
    ReportRow row = make_row(inst, rep);
    std::string text = serialize_report(row, rep, /*timing=*/false);
    EXPECT_NE(text.find("verdict true"), std::string::npos);
    EXPECT_NE(text.find("instance " + row.digest), std::string::npos);
    EXPECT_NE(text.find("predicted_support"), std::string::npos);
    EXPECT_EQ(text.find("millis"), std::string::npos);
    std::string timed = serialize_report(row, rep, /*timing=*/true);
    EXPECT_NE(timed.find("millis"), std::string::npos);
}

TEST(Reports, SweepSortedByDigestAndDeterministic) {
    SweepSpec spec;
    spec.fields = {{2, 4}};
    spec.families = {Family::QcAlternant, Family::QcGoppa};
    spec.ells = {2, 5};
    spec.trials = 1;
    spec.seed = 77;
    SweepResult a = run_sweep(spec, 1);
    SweepResult b = run_sweep(spec, 3);  // different worker count, same outcome
    ASSERT_EQ(a.rows.size(), b.rows.size());
    EXPECT_EQ(serialize_sweep_report(a.rows, false), serialize_sweep_report(b.rows, false));
    EXPECT_EQ(serialize_sweep_csv(a.rows, false), serialize_sweep_csv(b.rows, false));

    std::string csv = serialize_sweep_csv(a.rows, false);
    std::istringstream in(csv);
    std::string line, prev;
    std::getline(in, line);  // header
    EXPECT_EQ(line, csv_header(false).substr(0, csv_header(false).size() - 1));
    int rows = 0;
    while (std::getline(in, line)) {
        if (!prev.empty()) EXPECT_LE(prev.substr(0, 16), line.substr(0, 16));
        prev = line;
        ++rows;
    }
    EXPECT_EQ(rows, static_cast<int>(a.rows.size()));
}

TEST(Harness, CorruptionInjectionFlipsExactlyTheCorruptedRows) {
    SweepSpec spec;
    spec.fields = {{2, 4}, {2, 5}};
    spec.families = {Family::QcAlternant, Family::QcGoppa};
    spec.ells = {2, 5};
    spec.trials = 1;
    spec.seed = 2024;
    spec.corrupt = 0.25;
    SweepResult res = run_sweep(spec, 1);
    ASSERT_GT(res.corrupted, 0u);
    ASSERT_LT(res.corrupted, res.rows.size());
    size_t marked_false = 0, clean_true = 0;
    for (const auto& r : res.rows) {
        bool injected = r.note.rfind("injected-corruption", 0) == 0;
        if (injected) {
            EXPECT_FALSE(r.verdict);
            ++marked_false;
        } else {
            EXPECT_TRUE(r.verdict) << r.note;
            ++clean_true;
        }
    }
    EXPECT_EQ(marked_false, res.corrupted);
    EXPECT_EQ(marked_false, res.fail);
    EXPECT_EQ(clean_true, res.pass);
    // the injection rate is in the right ballpark
    double rate = static_cast<double>(res.corrupted) / res.rows.size();
    EXPECT_GT(rate, 0.05);
    EXPECT_LT(rate, 0.55);
}

TEST(Harness, EmptyGridGivesEmptyReport) {
    SweepSpec spec;
    spec.fields = {{2, 4}};
    spec.families = {Family::QcAlternant};
    spec.ells = {11};  // 11 divides neither 2^4 - 1 nor equals p: no cells
    SweepResult res = run_sweep(spec, 1);
    EXPECT_TRUE(res.rows.empty());
    EXPECT_TRUE(res.all_pass());
    std::string rep = serialize_sweep_report(res.rows, false);
    EXPECT_NE(rep.find("summary total 0 pass 0 fail 0"), std::string::npos);
}

TEST(Harness, GridIsDeterministicAndSeedsFollowCounterScheme) {
    SweepSpec spec;
    spec.fields = {{2, 4}, {3, 2}};
    spec.families = {Family::QcAlternant};
    spec.ells = {2, 3};
    spec.trials = 2;
    spec.seed = 400;
    auto cells_a = enumerate_grid(spec);
    auto cells_b = enumerate_grid(spec);
    ASSERT_EQ(cells_a.size(), cells_b.size());
    for (size_t i = 0; i < cells_a.size(); ++i) {
        EXPECT_EQ(cells_a[i].seed, cells_b[i].seed);
        EXPECT_EQ(cells_a[i].seed, splitmix64(spec.seed + i));
    }
}
