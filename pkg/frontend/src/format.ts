/**
 * Display formatting only.  Nothing here derives a quantity; the inputs
 * are service numbers and the outputs are strings.
 */

/** Integer cents to a dollar string: 204676708000 -> "$2,046,767,080.00". */
export function fmtCents(cents: number): string {
  if (!Number.isInteger(cents)) {
    throw new Error(`expected integer cents, got ${cents}`);
  }
  const sign = cents < 0 ? "-" : "";
  const abs = Math.abs(cents);
  const dollars = Math.floor(abs / 100).toLocaleString("en-US");
  const rem = String(abs % 100).padStart(2, "0");
  return `${sign}$${dollars}.${rem}`;
}

/** Trim a welfare/disparity figure for display without re-rounding twice. */
export function fmtNumber(value: number, digits = 6): string {
  const text = value.toFixed(digits);
  return text.replace(/(\.\d*?)0+$/, "$1").replace(/\.$/, "");
}

/** Signed delta for warnings: 0.32 -> "+0.32", -0.32 -> "-0.32". */
export function fmtSignedDelta(delta: number, digits = 6): string {
  const body = fmtNumber(Math.abs(delta), digits);
  return delta < 0 ? `-${body}` : `+${body}`;
}
