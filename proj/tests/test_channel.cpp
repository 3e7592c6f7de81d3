// Channel statistics: path-loss means, the two estimation-error models, the
// estimated-gain exponential rates, and the gain sampler's distribution.

#include <gtest/gtest.h>

#include <cmath>

#include "wprs/channel.hpp"

using namespace wprs;

namespace {

channel::NetworkModel reference_model() {
    channel::NetworkModel m; // defaults carry the reference geometry
    return m;
}

} // namespace

TEST(Channel, PathLossMean) {
    const channel::NetworkModel m = reference_model();
    EXPECT_NEAR(m.omega(channel::LinkClass::SourceRelay), std::pow(1.5, -3.0), 1e-15);
    EXPECT_NEAR(m.omega(channel::LinkClass::SourceEavesdropper), std::pow(2.0, -3.0), 1e-15);
    EXPECT_DOUBLE_EQ(m.omega(channel::LinkClass::BeaconSource), 1.0);
}

TEST(Channel, FixedErrorModel) {
    channel::NetworkModel m = reference_model();
    m.cee = channel::CeeModel::fixed(0.05);
    // Variance is power-independent and applies to estimated links only.
    EXPECT_DOUBLE_EQ(m.estimation_variance(channel::LinkClass::SourceRelay, 10.0), 0.05);
    EXPECT_DOUBLE_EQ(m.estimation_variance(channel::LinkClass::SourceRelay, 1e6), 0.05);
    EXPECT_DOUBLE_EQ(m.estimation_variance(channel::LinkClass::BeaconSource, 10.0), 0.0);
    EXPECT_DOUBLE_EQ(m.estimation_variance(channel::LinkClass::BeaconRelay, 10.0), 0.0);

    const double omega_sr = std::pow(1.5, -3.0);
    EXPECT_NEAR(m.estimated_gain_rate(channel::LinkClass::SourceRelay, 10.0),
                1.0 / (omega_sr - 0.05), 1e-12);
    EXPECT_NEAR(m.estimated_gain_rate(channel::LinkClass::BeaconSource, 10.0), 1.0, 1e-15);
}

TEST(Channel, SnrDependentErrorModel) {
    channel::NetworkModel m = reference_model();
    m.d_sr = 1.0; // omega = 1 for the worked example
    m.cee = channel::CeeModel::snr_dependent(1.0);
    // delta=1, omega=1, rho=9 -> sigma_e^2 = 1/(1+9) = 0.1.
    EXPECT_NEAR(m.estimation_variance(channel::LinkClass::SourceRelay, 9.0), 0.1, 1e-15);
    // Variance shrinks with power and never reaches omega, so the rate exists.
    EXPECT_LT(m.estimation_variance(channel::LinkClass::SourceRelay, 1e6),
              m.estimation_variance(channel::LinkClass::SourceRelay, 10.0));
    EXPECT_GT(m.estimated_gain_rate(channel::LinkClass::SourceRelay, 9.0), 1.0);
}

TEST(Channel, EavesdropperModelOverride) {
    channel::NetworkModel m = reference_model();
    m.cee = channel::CeeModel::fixed(0.05);
    m.cee_eve = channel::CeeModel::fixed(0.01);
    EXPECT_DOUBLE_EQ(m.estimation_variance(channel::LinkClass::SourceEavesdropper, 10.0), 0.01);
    EXPECT_DOUBLE_EQ(m.estimation_variance(channel::LinkClass::RelayEavesdropper, 10.0), 0.01);
    EXPECT_DOUBLE_EQ(m.estimation_variance(channel::LinkClass::SourceRelay, 10.0), 0.05);
}

TEST(Channel, DegenerateVarianceRejected) {
    channel::NetworkModel m = reference_model();
    // omega_se = 2^-3 = 0.125; a fixed variance at or above it is degenerate.
    m.cee = channel::CeeModel::fixed(0.125);
    EXPECT_THROW(m.estimated_gain_rate(channel::LinkClass::SourceEavesdropper, 10.0),
                 core::domain_error);
    EXPECT_NO_THROW(m.estimated_gain_rate(channel::LinkClass::SourceRelay, 10.0));
}

TEST(Channel, NoiseOnlyOnDataLinks) {
    const channel::NetworkModel m = reference_model();
    EXPECT_DOUBLE_EQ(m.noise(channel::LinkClass::SourceRelay), 1.0);
    EXPECT_THROW(m.noise(channel::LinkClass::BeaconSource), core::invalid_argument_error);
}

TEST(Channel, ModelValidation) {
    channel::NetworkModel m = reference_model();
    m.m = 0;
    EXPECT_THROW(m.validate(), core::invalid_argument_error);
    m = reference_model();
    m.m = 65;
    EXPECT_THROW(m.validate(), core::invalid_argument_error);
    m = reference_model();
    m.d_sr = 0.0;
    EXPECT_THROW(m.validate(), core::invalid_argument_error);
    m = reference_model();
    m.beta = -1.0;
    EXPECT_THROW(m.validate(), core::invalid_argument_error);
    m = reference_model();
    m.n_rd = 0.0;
    EXPECT_THROW(m.validate(), core::invalid_argument_error);
    EXPECT_NO_THROW(reference_model().validate());
}

TEST(Channel, SampleGainDistribution) {
    // Empirical mean and median of 200k draws against the exponential law.
    const double lambda = 2.5;
    rng::ChunkStream stream(42, 0);
    const int n = 200000;
    double sum = 0.0;
    int below_median = 0;
    const double median = std::log(2.0) / lambda;
    for (int i = 0; i < n; ++i) {
        const double g = channel::sample_gain(lambda, stream);
        ASSERT_GE(g, 0.0);
        sum += g;
        if (g < median)
            ++below_median;
    }
    const double mean = sum / n;
    // 5-sigma bands: sd(mean) = (1/lambda)/sqrt(n), sd(fraction) = 0.5/sqrt(n).
    EXPECT_NEAR(mean, 1.0 / lambda, 5.0 / (lambda * std::sqrt(double(n))));
    EXPECT_NEAR(below_median / double(n), 0.5, 5.0 * 0.5 / std::sqrt(double(n)));
}

TEST(Channel, SampleGainRejectsBadRate) {
    rng::ChunkStream stream(1, 0);
    EXPECT_THROW(channel::sample_gain(0.0, stream), core::invalid_argument_error);
    EXPECT_THROW(channel::sample_gain(-1.0, stream), core::invalid_argument_error);
}
