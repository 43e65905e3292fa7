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
        } catch (ParseException e) {
            jobs = new ArrayList();
        }
    }
}
