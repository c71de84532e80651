/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include <qnas/errors.hpp>
#include <qnas/seeds.hpp>
#include <qnas/types.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace qnas;

TEST_CASE("configuration rejects counts below one")
{
    CHECK_THROWS_AS(Configuration({1, 0, 2}), UsageError);
    CHECK_THROWS_AS(Configuration({-3}), UsageError);
    Configuration n{1, 2};
    CHECK_THROWS_AS(n.decrement(0), UsageError);
    n.decrement(1);
    CHECK(n == Configuration{1, 1});
}

TEST_CASE("configuration arithmetic")
{
    const Configuration n{2, 1, 2};
    CHECK(n.total() == 5);
    CHECK(n.plus_one(1) == Configuration{2, 2, 2});
    CHECK(n.minus_one(0) == Configuration{1, 1, 2});
    CHECK(n.dominated_by(Configuration{2, 3, 2}));
    CHECK_FALSE(n.dominated_by(Configuration{1, 3, 3}));
    CHECK(componentwise_max(Configuration{1, 4, 1}, n) == Configuration{2, 4, 2});
    CHECK(Configuration::ones(3) == Configuration{1, 1, 1});
}

TEST_CASE("nonnegative vectors reject negatives and non-finite values")
{
    CHECK_THROWS_AS(ArrivalRates({1.0, -0.1}), UsageError);
    CHECK_THROWS_AS(ArrivalRates({std::numeric_limits<double>::quiet_NaN()}), UsageError);
    CHECK_THROWS_AS(DemandMatrix({{0.1, std::numeric_limits<double>::infinity()}}), UsageError);
    CHECK_NOTHROW(ArrivalRates({0.0, 0.0}));
}

TEST_CASE("matrix rows must be rectangular")
{
    CHECK_THROWS_AS(Matrix({{1.0, 2.0}, {3.0}}), UsageError);
    const Matrix m{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(m(1, 0) == 3.0);
    CHECK(Matrix::from_rows(m.to_rows()) == m);
}

TEST_CASE("snapshot checks dimensions and utilization consistency")
{
    const DemandMatrix d{{0.5, 1.0 / 3.0, 0.5}, {0.5, 0.0, 0.5}};
    const ArrivalRates rates{2.0, 1.0};
    CHECK_NOTHROW(BaselineSnapshot(Configuration{1, 1, 1}, rates, d,
                                   UtilizationVector{1.5, 2.0 / 3.0, 1.5}));
    CHECK_THROWS_AS(BaselineSnapshot(Configuration{1, 1, 1}, rates, d,
                                     UtilizationVector{1.5, 0.6, 1.5}),
                    UsageError);
    CHECK_THROWS_AS(BaselineSnapshot::from_demands(Configuration{1, 1}, rates, d), UsageError);
    CHECK_THROWS_AS(BaselineSnapshot::from_demands(Configuration{1, 1, 1}, ArrivalRates{2.0}, d),
                    UsageError);
}

TEST_CASE("nearly_equal is absolute near zero and relative for large values")
{
    CHECK(nearly_equal(0.0, 5e-10));
    CHECK_FALSE(nearly_equal(0.0, 2e-9));
    CHECK(nearly_equal(1e6, 1e6 + 5e-4));
    CHECK_FALSE(nearly_equal(1e6, 1e6 + 5e-2));
}

TEST_CASE("error messages use one-based station indices")
{
    const InfeasibleConfiguration e({0, 2});
    CHECK(std::string(e.what()).find("{1, 3}") != std::string::npos);
    const UnattainableSla base(1, 2.0, 3.0);
    const UnattainableSla tagged(base, 17);
    CHECK(tagged.step() == 17);
    CHECK(tagged.workflow_class() == 1);
    CHECK(std::string(tagged.what()).find("step 17") != std::string::npos);
}

TEST_CASE("derived seeds are stable and separate components")
{
    CHECK(derive_seed(1, "workload") == derive_seed(1, "workload"));
    CHECK(derive_seed(1, "workload") != derive_seed(1, "demands"));
    CHECK(derive_seed(1, "workload") != derive_seed(2, "workload"));
    CHECK(derive_seed(1, "noise", 3) != derive_seed(1, "noise", 4));
}
