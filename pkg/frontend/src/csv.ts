/**
 * Strict reader for director-field sample CSVs.
 *
 * The producer writes a fixed schema; anything that deviates from it is
 * an error here, not a guess.
 */

export const EXPECTED_HEADER = "x1,x2,x3,n1,n2,n3,curv_residual,proj_len";

export interface FieldRecord {
  x1: number;
  x2: number;
  x3: number;
  n1: number;
  n2: number;
  n3: number;
  curvResidual: number;
  projLen: number;
}

export class CsvSchemaError extends Error {}

export function parseFieldCsv(text: string): FieldRecord[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError("empty input: no header line");
  }
  if (lines[0] !== EXPECTED_HEADER) {
    throw new CsvSchemaError(
      `unexpected header: got "${lines[0]}", expected "${EXPECTED_HEADER}"`,
    );
  }
  const records: FieldRecord[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 8) {
      throw new CsvSchemaError(`line ${i + 1}: expected 8 fields, got ${parts.length}`);
    }
    const values = parts.map((p) => Number(p));
    if (values.some((v) => !Number.isFinite(v))) {
      throw new CsvSchemaError(`line ${i + 1}: non-numeric field in "${lines[i]}"`);
    }
    records.push({
      x1: values[0],
      x2: values[1],
      x3: values[2],
      n1: values[3],
      n2: values[4],
      n3: values[5],
      curvResidual: values[6],
      projLen: values[7],
    });
  }
  if (records.length === 0) {
    throw new CsvSchemaError("no data rows after the header");
  }
  return records;
}
