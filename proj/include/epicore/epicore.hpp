// Copyright 2026 The epicore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "epicore/acceptability.hpp"
#include "epicore/balanced.hpp"
#include "epicore/coalition.hpp"
#include "epicore/economy.hpp"
#include "epicore/emitter.hpp"
#include "epicore/error.hpp"
#include "epicore/exact_lp.hpp"
#include "epicore/formula.hpp"
#include "epicore/game.hpp"
#include "epicore/knowledge.hpp"
#include "epicore/parallel.hpp"
#include "epicore/proof.hpp"
#include "epicore/rational.hpp"
#include "epicore/sequent.hpp"
#include "epicore/serialize.hpp"
