// SPDX-License-Identifier: Apache-2.0
//
// riscc - RIS-assisted multi-antenna coded caching toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef riscc_riscc_H
#define riscc_riscc_H

#include "channel.hpp"
#include "combinatorics.hpp"
#include "delivery.hpp"
#include "grouping.hpp"
#include "nulling.hpp"
#include "pda.hpp"
#include "serialize.hpp"

#endif
