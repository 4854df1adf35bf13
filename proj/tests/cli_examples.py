"""Run every `$ eqlarge ...` example in README.md plus extra cases.

README examples are fenced blocks whose lines start with "$ eqlarge"; the
lines up to the next command or the end of the block are the expected
output. A trailing "# exit N" comment on the command sets the expected exit
status (default 0). Lines of the expected output ending in "..." match any
line with that prefix; a lone "..." matches any remaining output.
"""
import shlex
import subprocess
import sys


def parse_examples(text):
    cases, in_block, cur = [], False, None
    for line in text.splitlines():
        if line.startswith("```"):
            if in_block and cur:
                cases.append(cur)
                cur = None
            in_block = not in_block
            continue
        if not in_block:
            continue
        if line.startswith("$ eqlarge"):
            if cur:
                cases.append(cur)
            cmd, _, note = line[2:].partition(" # exit ")
            cur = {"cmd": cmd.strip(), "exit": int(note) if note else 0, "out": []}
        elif cur is not None:
            cur["out"].append(line)
    return cases


def matches(expected, actual):
    for i, e in enumerate(expected):
        if e == "...":
            return True
        if i >= len(actual):
            return False
        if e.endswith("...") and actual[i].startswith(e[:-3]):
            continue
        if e != actual[i]:
            return False
    return len(actual) == len(expected)


def main():
    binary, readme, extra = sys.argv[1:4]
    cases = parse_examples(open(readme).read())
    cases += parse_examples("```\n" + open(extra).read().strip() + "\n```")
    failed = 0
    for c in cases:
        argv = [binary] + shlex.split(c["cmd"])[1:]
        p = subprocess.run(argv, capture_output=True, text=True)
        out = p.stdout.rstrip("\n").splitlines()
        ok = p.returncode == c["exit"] and matches(c["out"], out)
        print(("PASS " if ok else "FAIL ") + c["cmd"])
        if not ok:
            failed += 1
            print("  exit %d (expected %d)" % (p.returncode, c["exit"]))
            print("  stdout:\n    " + "\n    ".join(out))
            print("  stderr: " + p.stderr.strip())
    print("%d of %d examples passed" % (len(cases) - failed, len(cases)))
    return 1 if failed or not cases else 0


if __name__ == "__main__":
    sys.exit(main())
