// Copyright 2026 The HoughVote Authors. All Rights Reserved.
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

// Vote aggregation: the fixed-weight linear operator that turns an H×W×R
// evidence tensor into an H×W presence map. Evidence at (i, j, r) is spread
// uniformly, with weight 1/K_r, over the K_r pixels of region r centered at
// (i, j). Votes landing outside the map are dropped.

#ifndef HOUGHVOTE_VOTING_H_
#define HOUGHVOTE_VOTING_H_

#include <span>
#include <string>
#include <vector>

#include "houghvote/tensor.h"
#include "houghvote/vote_field.h"

namespace houghvote {

enum class VoteMode { kScatter, kGather };

VoteMode ParseVoteMode(const std::string& name);

// Source-driven form, a direct transcription of the accumulation rule.
// Throws ShapeError on a region-count mismatch and ValidationError on
// non-finite evidence.
PresenceMap AggregateScatter(const EvidenceTensor& evidence,
                             const VoteField& field);

// Output-driven form over the dense region map. Equal to AggregateScatter up
// to summation order, and the fast path.
PresenceMap AggregateGather(const EvidenceTensor& evidence,
                            const VoteField& field);

PresenceMap Aggregate(const EvidenceTensor& evidence, const VoteField& field,
                      VoteMode mode);

// Transpose of the voting operator: the gradient of <grad, Aggregate(E)>
// with respect to E. Masked regions get zero gradient.
EvidenceTensor AggregateAdjoint(const PresenceMap& grad,
                                const VoteField& field);

// Independent per-class aggregation. All tensors must share H, W and R.
std::vector<PresenceMap> AggregateMulticlass(
    std::span<const EvidenceTensor> evidence, const VoteField& field,
    VoteMode mode = VoteMode::kGather, int workers = 1);

}  // namespace houghvote

#endif  // HOUGHVOTE_VOTING_H_
