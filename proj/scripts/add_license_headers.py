#!/usr/bin/env python3
"""Prepend the Apache-2.0 header to project sources that lack it."""

import pathlib
import sys

HEADER = """Copyright 2026 The ssum-transfer Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License."""

DIRS = ["core", "tools", "tests", "benchmarks", "scripts"]
SLASH = {".hpp", ".cpp", ".h", ".cc"}
HASH = {".txt", ".cmake", ".in", ".py"}


def commented(prefix: str) -> str:
    return "\n".join((prefix + " " + line).rstrip() for line in HEADER.splitlines()) + "\n"


def main(root: pathlib.Path) -> int:
    changed = 0
    for d in DIRS:
        for path in sorted((root / d).rglob("*")):
            if not path.is_file():
                continue
            if path.suffix in SLASH:
                header = commented("//")
            elif path.suffix in HASH and (path.name == "CMakeLists.txt" or path.suffix != ".txt"):
                header = commented("#")
            else:
                continue
            text = path.read_text()
            if "Licensed under the Apache License" in text[:800]:
                continue
            if text.startswith("#!"):
                shebang, _, rest = text.partition("\n")
                text = shebang + "\n" + header + "\n" + rest
            else:
                text = header + "\n" + text
            path.write_text(text)
            changed += 1
    top = root / "CMakeLists.txt"
    text = top.read_text()
    if "Licensed under the Apache License" not in text[:800]:
        top.write_text(commented("#") + "\n" + text)
        changed += 1
    print(f"headers added to {changed} files")
    return 0


if __name__ == "__main__":
    sys.exit(main(pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".").resolve()))
