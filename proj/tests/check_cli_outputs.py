"""Validates CLI JSON against the shipped schemas and checks CSV layout and
byte-for-byte determinism. Usage: check_cli_outputs.py GSP4 SCHEMA_DIR WORK_DIR"""

import json
import pathlib
import shutil
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    exe, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    shutil.rmtree(work, ignore_errors=True)
    work.mkdir(parents=True)

    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())

    def run(*args: str, expect: int = 0) -> bytes:
        proc = subprocess.run([exe, *args], capture_output=True, check=False)
        if proc.returncode != expect:
            raise SystemExit(f"{' '.join(args)}: exit {proc.returncode}, wanted {expect}\n{proc.stderr.decode()}")
        return proc.stdout

    def validate(doc: object, schema: str) -> None:
        validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
        validator.validate(doc)

    cache = str(work / "cache")
    validate(json.loads(run("chartab", "--q", "2", "--format", "json", "--cache", cache)), "chartab.schema.json")
    for path in pathlib.Path(cache).glob("*.json"):
        validate(json.loads(path.read_text()), "cache.schema.json")
    validate(json.loads(run("table", "--q", "2", "--model", "N", "--format", "json")), "report_n.schema.json")
    single = json.loads(run("table", "--q", "2", "--model", "R", "--a", "0", "--b", "1", "--c", "0", "--format", "json"))
    validate(single, "report_r.schema.json")
    sweep = json.loads(run("table", "--q", "2", "--model", "R", "--format", "json"))
    validate(sweep, "report_r.schema.json")
    assert isinstance(sweep, list) and len(sweep) == 4, "q = 2 has four nondegenerate data"
    validate(json.loads(run("verify", "--q", "2", "--suite", "all", "--format", "json")), "verify.schema.json")

    # CSV: header row, LF line ends, UTF-8.
    csv = run("table", "--q", "2", "--model", "N", "--format", "csv")
    text = csv.decode("utf-8")
    assert "\r" not in text and text.endswith("\n")
    lines = text.splitlines()
    assert lines[0] == "q,row,degree,dim0,dim1,dim2,dim3,generic,cuspidal", lines[0]
    assert len(lines) == 12

    # Determinism, including across thread counts and through --out.
    out = work / "r.csv"
    first = run("table", "--q", "2", "--model", "R", "--format", "csv", "--threads", "1")
    run("table", "--q", "2", "--model", "R", "--format", "csv", "--threads", "4", "--out", str(out))
    assert out.read_bytes() == first, "R sweep differs between runs"

    # Invalid input and budget refusals exit with distinct nonzero codes.
    run("table", "--q", "3", "--model", "R", "--a", "0", "--b", "0", "--c", "0", expect=2)
    run("chartab", "--q", "6", expect=2)
    run("chartab", "--q", "9", expect=3)
    run("chartab", "--q", "3", "--mem-budget", "1M", expect=3)
    print("cli outputs ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
