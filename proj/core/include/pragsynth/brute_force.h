// Copyright 2026 The Pragsynth Authors
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

#ifndef PRAGSYNTH_BRUTE_FORCE_H_
#define PRAGSYNTH_BRUTE_FORCE_H_

#include "pragsynth/example_sequence.h"
#include "pragsynth/ids.h"
#include "pragsynth/meaning_matrix.h"
#include "pragsynth/pragmatics.h"

namespace pragsynth {

// Reference implementations of L0, S1 and L1 by full summation over H and U.
// They read the matrix only through MeaningMatrix::Consistent, keep no
// caches, and work in linear probability space. Same contracts and errors as
// the efficient versions; intended as test oracles.

Posterior BruteForceL0(const MeaningMatrix& m, const ExampleSequence& d);

double BruteForceS1Step(const MeaningMatrix& m, HypothesisId h,
                        const ExampleSequence& prefix, UtteranceId u);

double BruteForceS1Sequence(const MeaningMatrix& m, HypothesisId h,
                            const ExampleSequence& d);

Posterior BruteForceL1(const MeaningMatrix& m, const ExampleSequence& d);

}  // namespace pragsynth

#endif  // PRAGSYNTH_BRUTE_FORCE_H_
