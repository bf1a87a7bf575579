#!/usr/bin/env python3
"""Write a few ready-made instance files for driving the CLI by hand."""
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from dgkunneth.dgmodule import LEFT, RIGHT
from dgkunneth.field import Field
from dgkunneth.genlab import (
    make_dual_numbers,
    make_exterior,
    make_koszul_dg,
    regular_module,
    simple_module_dual_numbers,
)
from dgkunneth.serialize import dumps_canonical, module_file_to_json


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "examples_io")
    out.mkdir(parents=True, exist_ok=True)
    field = Field.prime(101)

    cases = []
    ext = make_exterior(field)
    cases.append(("exterior_m", ext, regular_module(ext, RIGHT)))
    cases.append(("exterior_n", ext, regular_module(ext, LEFT)))
    dn = make_dual_numbers(field)
    cases.append(("dualnum_m", dn, simple_module_dual_numbers(dn, RIGHT)))
    cases.append(("dualnum_n", dn, simple_module_dual_numbers(dn, LEFT)))
    kz = make_koszul_dg(field)
    cases.append(("koszul_m", kz, regular_module(kz, RIGHT)))
    cases.append(("koszul_n", kz, regular_module(kz, LEFT)))

    for name, algebra, module in cases:
        path = out / f"{name}.json"
        path.write_text(dumps_canonical(module_file_to_json(algebra, module, name)))
        print(f"wrote {path}")
    print("\ntry:  dgkunneth kunneth", out / "exterior_m.json", out / "exterior_n.json")
    print("try:  dgkunneth derived-kunneth", out / "dualnum_m.json", out / "dualnum_n.json")


if __name__ == "__main__":
    main()
