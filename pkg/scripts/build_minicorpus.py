"""Regenerate the labeled mini-corpus shipped in astchange/data/minicorpus.

Each commit changes one file and is meant to produce exactly one pattern
instance, recorded in labels.json.
"""

import json
import os
import shutil

ROOT = os.path.join(os.path.dirname(__file__), "..", "src", "astchange", "data", "minicorpus")
pairs = {}

BASE_ACCOUNT = """\
public class Account {
    private long balance = 0;
    private String owner;

    public Account(String owner) {
        this.owner = owner;
    }

    public void deposit(long amount) {
        if (amount > 0) {
            balance += amount;
        }
        audit.record(owner, amount);
    }

    public long getBalance() {
        return balance;
    }
}
"""

pairs["01-if-condition"] = ("IF-CC", "Fix bug in deposit guard", "Account.java", BASE_ACCOUNT,
    BASE_ACCOUNT.replace("if (amount > 0) {", "if (amount > 0 && !frozen) {"))

pairs["02-add-method"] = ("MD-ADD", "Add withdraw", "Account.java", BASE_ACCOUNT,
    BASE_ACCOUNT.replace("""    public long getBalance() {""", """    public void withdraw(long amount) {
        balance -= amount;
    }

    public long getBalance() {"""))

pairs["03-add-field"] = ("CF-ADD", "Track frozen accounts", "Account.java", BASE_ACCOUNT,
    BASE_ACCOUNT.replace("    private String owner;\n", "    private String owner;\n    private boolean frozen = false;\n"))

BASE_CACHE = """\
public class Cache {
    private Map entries;

    public Object lookup(String key) {
        Object hit = entries.get(key);
        if (hit != null) {
            stats.hit();
        }
        return hit;
    }

    public void evict(String key) {
        entries.remove(key);
    }
}
"""

pairs["04-add-else"] = ("IF-ABR", "fix missing miss counter", "Cache.java", BASE_CACHE,
    BASE_CACHE.replace("""            stats.hit();
        }""", """            stats.hit();
        } else {
            stats.miss();
        }"""))

pairs["05-change-signature"] = ("MD-CHG", "Widen evict key type", "Cache.java", BASE_CACHE,
    BASE_CACHE.replace("public void evict(String key)", "public void evict(Object key)"))

pairs["06-remove-method"] = ("MD-RMV", "Drop evict", "Cache.java", BASE_CACHE,
    BASE_CACHE.replace("""
    public void evict(String key) {
        entries.remove(key);
    }
""", ""))

BASE_QUEUE = """\
public class JobQueue {
    private int capacity = 16;
    private int retries = 3;
    private List jobs;

    public void submit(Job job) {
        jobs.add(job);
        notifyWorkers();
    }

    public Job take() {
        Job next = jobs.remove(0);
        return next;
    }

    public void load(String path) {
        try {
            jobs = reader.read(path);
        } catch (IOException e) {
            log.warn(e);
        }
    }
}
"""

pairs["07-remove-field"] = ("CF-RMV", "Remove unused retries", "JobQueue.java", BASE_QUEUE,
    BASE_QUEUE.replace("    private int retries = 3;\n", ""))

pairs["08-precondition-jump"] = ("IF-APCJ", "Fix NPE when job is null", "JobQueue.java", BASE_QUEUE,
    BASE_QUEUE.replace("""    public void submit(Job job) {
""", """    public void submit(Job job) {
        if (job == null) {
            return;
        }
"""))

pairs["09-add-catch"] = ("TY-ARCB-add", "patch: handle corrupt job files", "JobQueue.java", BASE_QUEUE,
    BASE_QUEUE.replace("""            log.warn(e);
        }""", """            log.warn(e);
        } catch (ParseException e) {
            jobs = new ArrayList();
        }"""))

pairs["10-precondition"] = ("IF-APC", "Wake a worker for urgent jobs", "JobQueue.java", BASE_QUEUE,
    BASE_QUEUE.replace("""        jobs.add(job);
""", """        jobs.add(job);
        if (job.isUrgent()) {
            wakeWorker();
        }
"""))

BASE_LEXER = """\
public class Lexer {
    private int pos = 0;

    public Token scan(char c) {
        switch (c) {
            case '(':
                return Token.LPAREN;
            case ')':
                return Token.RPAREN;
            default:
                pos++;
        }
        if (c == ' ') {
            skip();
        } else {
            pos++;
            mark(pos);
        }
        return null;
    }
}
"""

pairs["11-add-case"] = ("SW-ARSB-add", "Support brackets", "Lexer.java", BASE_LEXER,
    BASE_LEXER.replace("""            default:""", """            case '[':
                return Token.LBRACKET;
            default:"""))

pairs["12-remove-else"] = ("IF-RBR", "Bugfix: do not advance twice", "Lexer.java", BASE_LEXER,
    BASE_LEXER.replace("""            skip();
        } else {
            pos++;
            mark(pos);
        }""", """            skip();
        }"""))


def main(root: str = ROOT) -> None:
    shutil.rmtree(root, ignore_errors=True)
    labels = {}
    for cid, (pid, msg, path, old, new) in pairs.items():
        assert old != new, cid
        d = os.path.join(root, cid)
        for side, text in (("old", old), ("new", new)):
            os.makedirs(os.path.join(d, side), exist_ok=True)
            open(os.path.join(d, side, path), "w").write(text)
        open(os.path.join(d, "message.txt"), "w").write(msg + "\n")
        labels[cid] = pid
    json.dump(labels, open(os.path.join(root, "labels.json"), "w"), indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
