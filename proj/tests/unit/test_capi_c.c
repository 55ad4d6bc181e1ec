/* The public header must compile as C. */
#include <stdio.h>

#include "apf/apf.h"

int main(void) {
  double v = 0;
  if (apf_shc_imag(1.0, 0.5, &v) != APF_OK) return 1;
  if (apf_eval_sum(NULL, 0.0, 1.0, &v) != APF_ERR_INVALID_ARGUMENT) return 1;
  printf("apf %s ok\n", apf_version());
  return 0;
}
