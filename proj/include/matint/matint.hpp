// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MATINT_MATINT_HPP_
#define MATINT_MATINT_HPP_

#include "matint/auction.hpp"
#include "matint/basis.hpp"
#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/exact.hpp"
#include "matint/families.hpp"
#include "matint/ledger.hpp"
#include "matint/matroid.hpp"
#include "matint/parallel_group.hpp"
#include "matint/random.hpp"
#include "matint/sparsify.hpp"
#include "matint/weighted.hpp"
#include "matint/wrappers.hpp"

#endif  // MATINT_MATINT_HPP_
