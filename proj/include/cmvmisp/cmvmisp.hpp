/*
   Copyright 2026 The cmvmisp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CMVMISP_CMVMISP_HPP
#define CMVMISP_CMVMISP_HPP

#include "errors.hpp"
#include "poly.hpp"
#include "vecpoly.hpp"
#include "cmv.hpp"
#include "interp.hpp"
#include "misp.hpp"

#endif // CMVMISP_CMVMISP_HPP
