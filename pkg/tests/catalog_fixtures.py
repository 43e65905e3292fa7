"""One positive and one negative revision pair per catalog pattern.

Each entry is (pattern id, old method body, new method body). Bodies are
placed in a fixed class so member-level edits can be expressed too.
"""

CLASS = """\
public class Target {{
    private int size = 0;
{members}
    public int work(Item item) {{
{body}
    }}

    public void helper() {{
        tick();
    }}
}}
"""

SWITCH = """\
        switch (item.kind) {
            case 1:
                small();
                break;
            case 2:
                large();
                break;
        }"""

TRY = """\
        try {
            item.open();
        } catch (IOException e) {
            log(e);
        } catch (RuntimeException e) {
            abort();
        }"""


def program(body: str, members: str = "", helper: bool = True) -> str:
    text = CLASS.format(members=members, body=body)
    if not helper:
        text = text.replace("\n    public void helper() {\n        tick();\n    }\n", "")
    return text


def pair(old_body: str, new_body: str, **kw) -> tuple[str, str]:
    return program(old_body, **kw), program(new_body, **kw)


IF_ELSE = """\
        if (item.ready()) {
            item.run();
        } else {
            item.defer();
        }"""
IF_ONLY = """\
        if (item.ready()) {
            item.run();
        }"""
LOOP = """\
        while (item.hasNext()) {
            item.step();
        }"""
PLAIN = """\
        item.prepare();
        return item.size();"""

POSITIVE = {
    "IF-CC": pair(IF_ONLY, IF_ONLY.replace("item.ready()", "item.ready() && size > 0")),
    "MD-ADD": (program(PLAIN, helper=False), program(PLAIN)),
    "CF-ADD": (program(PLAIN), program(PLAIN, members="    private int limit = 10;\n")),
    "IF-ABR": pair(IF_ONLY, IF_ELSE),
    "MD-CHG": (program(PLAIN), program(PLAIN).replace("work(Item item)", "work(Item item, int hint)")),
    "MD-RMV": (program(PLAIN), program(PLAIN, helper=False)),
    "CF-RMV": (program(PLAIN, members="    private int limit = 10;\n"), program(PLAIN)),
    "IF-APCJ": pair(PLAIN, "        if (item == null) {\n            return 0;\n        }\n" + PLAIN),
    "TY-ARCB-add": pair(TRY, TRY.replace("            abort();\n        }", "            abort();\n        } catch (Exception e) {\n            retry();\n        }")),
    "IF-APC": pair(PLAIN, "        if (item.isStale()) {\n            item.refresh();\n        }\n" + PLAIN),
    "SW-ARSB-add": pair(SWITCH, SWITCH.replace("        }", "            case 3:\n                huge();\n                break;\n        }")),
    "TY-ARCB-rm": pair(TRY, TRY.replace(" catch (RuntimeException e) {\n            abort();\n        }", "")),
    "IF-RMV": pair(IF_ONLY + "\n" + PLAIN, PLAIN),
    "LP-CC": pair(LOOP, LOOP.replace("item.hasNext()", "item.hasNext() && size < 9")),
    "IF-RBR": pair(IF_ELSE, IF_ONLY),
    "SW-ARSB-rm": pair(SWITCH, SWITCH.replace("            case 2:\n                large();\n                break;\n", "")),
    "TY-ARTC-rm": pair(TRY + "\n" + PLAIN, PLAIN),
    "TY-ARTC-add": pair(PLAIN, TRY + "\n" + PLAIN),
}

NEGATIVE = {
    # a loop condition is not an if condition
    "IF-CC": pair(LOOP, LOOP.replace("item.hasNext()", "item.hasNext() && size < 9")),
    "MD-ADD": (program(PLAIN), program(PLAIN, members="    private int limit = 10;\n")),
    "CF-ADD": (program(PLAIN, helper=False), program(PLAIN)),
    # the else comes with a brand-new if
    "IF-ABR": pair(PLAIN, IF_ELSE + "\n" + PLAIN),
    "MD-CHG": pair(PLAIN, PLAIN.replace("prepare", "prepareAll")),
    "MD-RMV": pair(PLAIN, "        return item.size();"),
    "CF-RMV": (program(PLAIN), program(PLAIN, helper=False)),
    # existing return wrapped by the new if: a parent change, not an insert
    "IF-APCJ": pair(PLAIN, "        item.prepare();\n        if (item.valid()) {\n            return item.size();\n        }"),
    # catch clause arrives with a new try
    "TY-ARCB-add": pair(PLAIN, TRY + "\n" + PLAIN),
    # the new check jumps, which belongs to the jump variant
    "IF-APC": pair(PLAIN, "        if (item == null) {\n            return 0;\n        }\n" + PLAIN),
    "SW-ARSB-add": pair(PLAIN, SWITCH + "\n" + PLAIN),
    "TY-ARCB-rm": pair(TRY + "\n" + PLAIN, PLAIN),
    "IF-RMV": pair(IF_ELSE, IF_ONLY),
    "LP-CC": pair(IF_ONLY, IF_ONLY.replace("item.ready()", "item.ready() && size > 0")),
    # the whole if goes, not just its else
    "IF-RBR": pair(IF_ELSE + "\n" + PLAIN, PLAIN),
    "SW-ARSB-rm": pair(SWITCH + "\n" + PLAIN, PLAIN),
    "TY-ARTC-rm": pair(TRY, TRY.replace(" catch (RuntimeException e) {\n            abort();\n        }", "")),
    "TY-ARTC-add": pair(TRY, TRY.replace("            abort();\n        }", "            abort();\n        } catch (Exception e) {\n            retry();\n        }")),
}
