/*
 * Copyright 2026 The tdesign Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

namespace tdesign {

/// Modified Bessel function of the second kind K_nu(z), z > 0.
///
/// The order is reduced to mu = nu - round(nu) in [-1/2, 1/2]; K_mu and
/// K_{mu+1} come from Temme's series for z <= 2 and from Steed's continued
/// fraction (CF2) for z > 2, then forward recurrence reaches nu. K is even in
/// the order, so negative nu is accepted. Throws std::domain_error for z <= 0.
double bessel_k(double nu, double z);

/// Standard normal cumulative distribution function.
double normal_cdf(double z);

}  // namespace tdesign
