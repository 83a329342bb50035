// Copyright 2026 The convcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "convcs/types.hpp"

namespace convcs {

// Unnormalized DFT pair with the convention F(p, q) = exp(-2 pi j p q / N).
// Both are safe to call concurrently; plans are cached per length.

/// y = F x.
CVec fft(CSpan x);

/// y = F^* x (no 1/N factor).
CVec ifft(CSpan x);

}  // namespace convcs
