/*
 * Copyright 2026 The tiedecay Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* The public header must compile and link as plain C. */

#include <stdio.h>
#include <string.h>

#include "tiedecay/tiedecay.h"

int main(void) {
  const char* text = "0 a b\n2 b c\n";
  td_stream* s = NULL;
  double gap = 0.0;
  if (td_stream_parse(text, strlen(text), 0, &s) != TD_OK) return 1;
  if (td_spectral_gap(s, 1.0, 3.0, &gap) != TD_OK) return 2;
  td_stream_free(s);
  if (!(gap > 0.0 && gap <= 1.0)) return 3;
  printf("gap %.6f\n", gap);
  return 0;
}
