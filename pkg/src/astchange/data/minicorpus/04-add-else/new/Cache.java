public class Cache {
    private Map entries;

    public Object lookup(String key) {
        Object hit = entries.get(key);
        if (hit != null) {
            stats.hit();
        } else {
            stats.miss();
        }
        return hit;
    }

    public void evict(String key) {
        entries.remove(key);
    }
}
